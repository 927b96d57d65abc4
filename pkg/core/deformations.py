"""
Truncated formal deformations μ_t = μ + tφ₁ + t²φ₂ + ⋯ + t^Kφ_K.

The obstruction at order m is the t^m coefficient of the admissibility
residual R(μ_t), divided by 3:

    (1/3)·δ²φ_m + Σ_{i+j=m, i,j≥1} φ_i∘φ_j      (ordered pairs)

obstructions() assembles it from circ() and delta2(); residual_polynomial()
expands R(μ_t) directly. Both paths agree exactly.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

import config
from core.algebra import (AlgebraStructure, Cochain2, Cochain3, LinearMap,
                          admissibility_pairing, transform_bilinear)
from core.cohomology import CohomologyCalculator, delta2_values
from core.exactnum import RationalLike, Subspace, inverse, is_zero, to_rational, zeros
from core.exceptions import DimensionMismatchError, PreconditionError
from core.identities import Witness
from utils.logger import get_logger

logger = get_logger(__name__)


def circ(phi: Cochain2, psi: Cochain2) -> Cochain3:
    """
    φ∘ψ(X,Y,Z) = φ(ψ(X,Y),Z) − φ(X,ψ(Y,Z)) − ⅓φ(ψ(X,Z),Y) − ⅓φ(ψ(Y,Z),X)
                 + ⅓φ(ψ(Y,X),Z) + ⅓φ(ψ(Z,X),Y)
    """
    if phi.dim != psi.dim:
        raise DimensionMismatchError(f"dimensions {phi.dim} and {psi.dim}")
    return Cochain3(admissibility_pairing(phi.values, psi.values) / 3)


@dataclass(frozen=True, eq=False)
class FormalDeformation:
    base: AlgebraStructure
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(t if isinstance(t, Cochain2) else Cochain2(t) for t in self.terms)
        for k, term in enumerate(terms, start=1):
            if term.dim != self.base.dim:
                raise DimensionMismatchError(
                    f"term φ_{k} has dimension {term.dim}, base has {self.base.dim}")
        object.__setattr__(self, 'terms', terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return self.base.dim

    def term(self, k: int) -> Cochain2:
        """φ_k, with φ₀ = μ and zero beyond the truncation order."""
        if k == 0:
            return self.base.as_cochain()
        if 1 <= k <= self.order:
            return self.terms[k - 1]
        return Cochain2.zero(self.dim)

    @classmethod
    def trivial(cls, base: AlgebraStructure,
                order: int = config.DEFAULT_DEFORMATION_ORDER) -> 'FormalDeformation':
        return cls(base, tuple(Cochain2.zero(base.dim) for _ in range(order)))

    def truncated(self, order: int) -> 'FormalDeformation':
        return FormalDeformation(self.base, tuple(self.term(k) for k in range(1, order + 1)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalDeformation):
            return NotImplemented
        order = max(self.order, other.order)
        return self.base == other.base and all(
            self.term(k) == other.term(k) for k in range(1, order + 1))

    __hash__ = None


@dataclass
class ObstructionReport:
    base_admissible: bool
    residuals: List[Cochain3] = field(default_factory=list)
    vanishes: List[bool] = field(default_factory=list)
    first_failure: Optional[int] = None
    witness: Optional[Witness] = None

    @property
    def passed(self) -> bool:
        return self.base_admissible and self.first_failure is None

    def to_dict(self) -> dict:
        data = {
            'base_admissible': self.base_admissible,
            'order': len(self.residuals),
            'vanishes': {str(m): v for m, v in enumerate(self.vanishes, start=1)},
            'first_failure': self.first_failure,
            'witness': None if self.witness is None else self.witness.to_dict(),
        }
        return data


def residual_polynomial(d: FormalDeformation) -> List[Cochain3]:
    """Coefficients of R(μ_t) for t⁰ … t^{2K}."""
    coefficients = []
    for m in range(2 * d.order + 1):
        total = zeros((d.dim,) * 4)
        for i in range(max(0, m - d.order), min(m, d.order) + 1):
            phi_i, phi_j = d.term(i), d.term(m - i)
            if phi_i.is_zero() or phi_j.is_zero():
                continue
            total = total + admissibility_pairing(phi_i.values, phi_j.values)
        coefficients.append(Cochain3(total))
    return coefficients


def obstruction(d: FormalDeformation, m: int) -> Cochain3:
    """Order-m obstruction tensor (1/3)·δ²φ_m + Σ_{i+j=m} φ_i∘φ_j."""
    total = Cochain3(delta2_values(d.base.c, d.term(m).values) / 3)
    for i in range(1, m):
        total = total + circ(d.term(i), d.term(m - i))
    return total


def obstructions(d: FormalDeformation) -> ObstructionReport:
    if d.order < 1:
        raise PreconditionError("a deformation needs at least one term")
    base_residual = Cochain3(admissibility_pairing(d.base.c, d.base.c))
    report = ObstructionReport(base_admissible=base_residual.is_zero())
    for m in range(1, d.order + 1):
        residual = obstruction(d, m)
        report.residuals.append(residual)
        report.vanishes.append(residual.is_zero())
        if report.first_failure is None and not residual.is_zero():
            report.first_failure = m
            indices, value = residual.first_nonzero()
            report.witness = Witness(indices, list(value))
    logger.debug(f"obstructions of {d.base.name or 'deformation'} to order {d.order}: "
                 f"first failure {report.first_failure}")
    return report


def evaluate_at(d: FormalDeformation, t: RationalLike) -> AlgebraStructure:
    """The multiplication μ + tφ₁ + ⋯ + t^Kφ_K at a rational t."""
    t = to_rational(t)
    c = d.base.c.copy()
    for k in range(1, d.order + 1):
        c = c + d.term(k).values * t ** k
    return AlgebraStructure(c, d.base.name)


def _series_inverse(f_terms: Sequence[np.ndarray], order: int) -> List[np.ndarray]:
    """g with f·g = id mod t^{order+1}; g₀ = f₀⁻¹, g_m = −g₀ Σ_{k≥1} f_k g_{m−k}."""
    n = f_terms[0].shape[0]
    f = list(f_terms) + [zeros((n, n))] * (order + 1 - len(f_terms))
    g0 = inverse(f[0])
    g = [g0]
    for m in range(1, order + 1):
        acc = zeros((n, n))
        for k in range(1, m + 1):
            acc = acc + f[k] @ g[m - k]
        g.append(-(g0 @ acc))
    return g


def apply_equivalence(d: FormalDeformation,
                      f_terms: Sequence[LinearMap]) -> FormalDeformation:
    """
    Transform μ_t into f⁻¹(μ_t(f X, f Y)) for f = f₀ + t f₁ + ⋯, truncated at
    d.order.

    Raises:
        PreconditionError: if f₀ is singular
    """
    if not f_terms:
        raise PreconditionError("an equivalence needs at least f₀")
    for f in f_terms:
        if f.dim != d.dim:
            raise DimensionMismatchError(f"map of dimension {f.dim} on a "
                                         f"deformation of dimension {d.dim}")
    n, order = d.dim, d.order
    f = [m.matrix for m in f_terms[:order + 1]]
    f += [zeros((n, n))] * (order + 1 - len(f))
    g = _series_inverse(f, order)

    coefficients = []
    for m in range(order + 1):
        total = zeros((n, n, n))
        for a in range(m + 1):
            if is_zero(g[a]):
                continue
            for b in range(m - a + 1):
                phi = d.term(b)
                if phi.is_zero():
                    continue
                for c in range(m - a - b + 1):
                    e = m - a - b - c
                    if is_zero(f[c]) or is_zero(f[e]):
                        continue
                    total = total + transform_bilinear(phi.values, g[a], f[c], f[e])
        coefficients.append(total)
    return FormalDeformation(AlgebraStructure(coefficients[0], d.base.name),
                             tuple(Cochain2(c) for c in coefficients[1:]))


def is_formal_automorphism(alg: AlgebraStructure, f_terms: Sequence[LinearMap],
                           order: int = config.DEFAULT_DEFORMATION_ORDER) -> bool:
    """f⁻¹(μ(fX, fY)) = μ up to t^order."""
    moved = apply_equivalence(FormalDeformation.trivial(alg, order), f_terms)
    return moved == FormalDeformation.trivial(alg, order)


def first_order_space(alg: AlgebraStructure) -> Subspace:
    """Infinitesimal deformations: ker δ² in flattened cochain coordinates."""
    return CohomologyCalculator(alg).cocycles()
