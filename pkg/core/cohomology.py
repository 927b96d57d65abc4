"""
Coboundaries of admissible Poisson algebras and the classical operators
they decompose into.

Flattening order for coboundary matrices: the output index varies slowest,
then the input indices in lexicographic order. A LinearMap f flattens to
f.matrix.reshape(-1) (entry [j, i] at j·n + i), a Cochain2 value[i, j, k]
sits at k·n² + i·n + j and a Cochain3 value[i, j, l, k] at
k·n³ + i·n² + j·n + l.

δ¹f(X,Y) = f(X)·Y + X·f(Y) − f(X·Y)
δ²φ = admissibility_pairing(φ, μ) + admissibility_pairing(μ, φ)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.algebra import (AlgebraStructure, Cochain2, Cochain3, LinearMap,
                          admissibility_pairing, permute_arguments,
                          substitute_left, substitute_right, unit_vector,
                          left_multiplication)
from core.data_handler import cochain3_to_rows, cochain_to_dict
from core.exactnum import Subspace, is_zero, nullspace, solve_unique, zeros
from core.exceptions import (DimensionMismatchError, InvariantViolation,
                             PreconditionError)
from core.identities import admissibility_residual, check_admissible
from core.structure import PoissonPair, split
from utils.logger import LoggerMixin

DECOMPOSITION_COEFFICIENTS: Tuple[Fraction, ...] = tuple(
    Fraction(v) for v in (2, 4, 2, 2, 2, 2))
DECOMPOSITION_TERMS = ('chevalley_skew', 'harrison_sym', 'chevalley_ext_sym',
                       'harrison_ext_skew', 'l1_skew', 'l2_sym')

_SIGNS = {(0, 1, 2): 1, (1, 0, 2): -1, (2, 1, 0): -1,
          (0, 2, 1): -1, (1, 2, 0): 1, (2, 0, 1): 1}


# ---------------------------------------------------------------------------
# Flattening


def flatten_map(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix, dtype=object).reshape(-1)


def flatten_cochain2(values: np.ndarray) -> np.ndarray:
    return np.transpose(values, (2, 0, 1)).reshape(-1)


def flatten_cochain3(values: np.ndarray) -> np.ndarray:
    return np.transpose(values, (3, 0, 1, 2)).reshape(-1)


def unflatten_cochain2(vector, n: int) -> Cochain2:
    return Cochain2(np.transpose(np.array(vector, dtype=object).reshape(n, n, n), (1, 2, 0)))


def unflatten_cochain3(vector, n: int) -> Cochain3:
    return Cochain3(np.transpose(np.array(vector, dtype=object).reshape(n, n, n, n),
                                 (1, 2, 3, 0)))


def _check_dim(alg: AlgebraStructure, other_dim: int):
    if other_dim != alg.dim:
        raise DimensionMismatchError(
            f"cochain of dimension {other_dim} on an algebra of dimension {alg.dim}")


# ---------------------------------------------------------------------------
# δ⁰, δ¹, δ²


def delta0(alg: AlgebraStructure, two_sided: bool = False) -> Subspace:
    """
    {X : X·Y = 0 for all Y}; with two_sided, also Y·X = 0.
    """
    n = alg.dim
    blocks = [np.transpose(alg.c, (1, 2, 0)).reshape(n * n, n)]      # X·e_j
    if two_sided:
        blocks.append(np.transpose(alg.c, (0, 2, 1)).reshape(n * n, n))  # e_j·X
    return nullspace(np.vstack(blocks))


def delta1_values(c: np.ndarray, f: np.ndarray) -> np.ndarray:
    left = np.tensordot(f, c, axes=(0, 0))                          # f(X)·Y
    right = np.transpose(np.tensordot(c, f, axes=(1, 0)), (0, 2, 1))  # X·f(Y)
    inner = np.tensordot(c, f, axes=(2, 1))                         # f(X·Y)
    return left + right - inner


def delta1(alg: AlgebraStructure, f: LinearMap) -> Cochain2:
    _check_dim(alg, f.dim)
    return Cochain2(delta1_values(alg.c, f.matrix))


def delta1_matrix(alg: AlgebraStructure) -> np.ndarray:
    """Matrix of δ¹, shape (n³, n²)."""
    n = alg.dim
    columns = []
    for j in range(n):
        for i in range(n):
            f = zeros((n, n))
            f[j, i] = Fraction(1)
            columns.append(flatten_cochain2(delta1_values(alg.c, f)))
    if not columns:
        return zeros((0, 0))
    return np.array(columns, dtype=object).T


def delta2_values(c: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return admissibility_pairing(phi, c) + admissibility_pairing(c, phi)


def delta2(alg: AlgebraStructure, phi: Cochain2) -> Cochain3:
    _check_dim(alg, phi.dim)
    return Cochain3(delta2_values(alg.c, phi.values))


def delta2_matrix(alg: AlgebraStructure) -> np.ndarray:
    """Matrix of δ², shape (n⁴, n³)."""
    n = alg.dim
    columns = []
    for k in range(n):
        for i in range(n):
            for j in range(n):
                phi = zeros((n, n, n))
                phi[i, j, k] = Fraction(1)
                columns.append(flatten_cochain3(delta2_values(alg.c, phi)))
    if not columns:
        return zeros((0, 0))
    return np.array(columns, dtype=object).T


def first_order_residual(alg: AlgebraStructure, phi: Cochain2) -> Cochain3:
    """½(R(μ + φ) − R(μ − φ)), the linear part of the admissibility residual."""
    plus = admissibility_residual(AlgebraStructure(alg.c + phi.values))
    minus = admissibility_residual(AlgebraStructure(alg.c - phi.values))
    return Cochain3((plus - minus) / 2)


# ---------------------------------------------------------------------------
# Classical operators


def chevalley(bracket: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """
    {φ(X,Y),Z} + {φ(Y,Z),X} + {φ(Z,X),Y} + φ({X,Y},Z) + φ({Y,Z},X) + φ({Z,X},Y).
    """
    outer = substitute_left(bracket, phi)
    inner = substitute_left(phi, bracket)
    total = outer + inner
    return (total + permute_arguments(total, (1, 2, 0))
            + permute_arguments(total, (2, 0, 1)))


def harrison(product: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """φ(X,Y)•Z − X•φ(Y,Z) + φ(X•Y,Z) − φ(X,Y•Z)."""
    return (substitute_left(product, phi) - substitute_right(product, phi)
            + substitute_left(phi, product) - substitute_right(phi, product))


def l1(product: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """φ(X•Y,Z) − φ(X,Z)•Y − X•φ(Y,Z)."""
    return (substitute_left(phi, product)
            - permute_arguments(substitute_left(product, phi), (0, 2, 1))
            - substitute_right(product, phi))


def l2(bracket: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """−3φ(X,{Y,Z}) + {φ(X,Y),Z} − {φ(X,Z),Y}."""
    outer = substitute_left(bracket, phi)
    return (-3 * substitute_right(phi, bracket) + outer
            - permute_arguments(outer, (0, 2, 1)))


def lichnerowicz_values(bracket: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """
    δ_LPφ(X₀,X₁,X₂) = {X₀,φ(X₁,X₂)} − {X₁,φ(X₀,X₂)} + {X₂,φ(X₀,X₁)}
                      − φ({X₀,X₁},X₂) + φ({X₀,X₂},X₁) − φ({X₁,X₂},X₀)
    """
    outer = substitute_right(bracket, phi)
    inner = substitute_left(phi, bracket)
    return (outer - permute_arguments(outer, (1, 0, 2)) + permute_arguments(outer, (2, 0, 1))
            - inner + permute_arguments(inner, (0, 2, 1))
            - permute_arguments(inner, (1, 2, 0)))


def is_biderivation(pair: PoissonPair, phi: Cochain2) -> bool:
    """Skew and a derivation of the commutative product in each argument."""
    return phi.is_skew() and is_zero(l1(pair.product.c, phi.values))


def lichnerowicz(pair: PoissonPair, phi: Cochain2) -> Cochain3:
    """
    Raises:
        PreconditionError: if φ is not a skew biderivation
    """
    if not is_biderivation(pair, phi):
        raise PreconditionError("δ_LP is only defined on skew biderivations")
    return Cochain3(lichnerowicz_values(pair.bracket.c, phi.values))


def antisymmetrize3(tensor: np.ndarray) -> np.ndarray:
    """Σ_σ sgn(σ)·T∘Φ_σ."""
    out = zeros(tensor.shape)
    for order, sign in _SIGNS.items():
        out = out + sign * permute_arguments(tensor, order)
    return out


def harrison_projection(tensor: np.ndarray) -> np.ndarray:
    """T(X,Y,Z) − T(Z,Y,X) + T(X,Z,Y) − T(Z,X,Y)."""
    return (tensor - permute_arguments(tensor, (2, 1, 0))
            + permute_arguments(tensor, (0, 2, 1))
            - permute_arguments(tensor, (2, 0, 1)))


@dataclass
class ClassicalOperators:
    chevalley_skew: Cochain3
    harrison_sym: Cochain3
    chevalley_ext_sym: Cochain3
    harrison_ext_skew: Cochain3
    l1_skew: Cochain3
    l2_sym: Cochain3
    lichnerowicz: Optional[Cochain3] = None

    def components(self) -> List[Cochain3]:
        return [getattr(self, name) for name in DECOMPOSITION_TERMS]

    def recombine(self, coefficients: Sequence = DECOMPOSITION_COEFFICIENTS) -> Cochain3:
        total = Cochain3.zero(self.chevalley_skew.dim)
        for coeff, term in zip(coefficients, self.components()):
            total = total + term * coeff
        return total

    def to_dict(self) -> dict:
        data = {name: cochain3_to_rows(getattr(self, name)) for name in DECOMPOSITION_TERMS}
        data['lichnerowicz'] = None if self.lichnerowicz is None \
            else cochain3_to_rows(self.lichnerowicz)
        return data


def classical_operators(pair: PoissonPair, phi: Cochain2) -> ClassicalOperators:
    """
    δ_C(φ_a), δ_H(φ_s), δ̃_C(φ_s), δ̃_H(φ_a), L₁(φ_a), L₂(φ_s), and δ_LP(φ)
    when φ is a skew biderivation.
    """
    if phi.dim != pair.dim:
        raise DimensionMismatchError(f"cochain of dimension {phi.dim} on a pair "
                                     f"of dimension {pair.dim}")
    b, p = pair.bracket.c, pair.product.c
    sym = phi.symmetric_part().values
    skew = phi.skew_part().values
    lp = None
    if is_biderivation(pair, phi):
        lp = Cochain3(lichnerowicz_values(b, phi.values))
    return ClassicalOperators(
        chevalley_skew=Cochain3(chevalley(b, skew)),
        harrison_sym=Cochain3(harrison(p, sym)),
        chevalley_ext_sym=Cochain3(chevalley(b, sym)),
        harrison_ext_skew=Cochain3(harrison(p, skew)),
        l1_skew=Cochain3(l1(p, skew)),
        l2_sym=Cochain3(l2(b, sym)),
        lichnerowicz=lp,
    )


def pin_decomposition_coefficients(alg: AlgebraStructure,
                                   phis: Sequence[Cochain2]) -> Tuple[Fraction, ...]:
    """
    The unique coefficients a with δ²φ = Σ a_r·component_r(φ) for all φ in
    `phis`, solved exactly. alg need not be admissible.

    Raises:
        PreconditionError: if no such vector exists or it is not unique
    """
    pair = split(alg, force=True)
    rows = []
    rhs = []
    for phi in phis:
        ops = classical_operators(pair, phi)
        rows.append(np.array([flatten_cochain3(t.values) for t in ops.components()],
                             dtype=object).T)
        rhs.append(flatten_cochain3(delta2_values(alg.c, phi.values)))
    return tuple(solve_unique(np.vstack(rows), np.concatenate(rhs)))


def cocycle_criteria(alg: AlgebraStructure, phi: Cochain2) -> Dict[str, bool]:
    """
    The three conditions equivalent to δ²φ = 0: δ_Cφ_a = 0, δ_Hφ_s = 0 and
    δ̃_Cφ_s + δ̃_Hφ_a + L₁φ_a + L₂φ_s = 0.
    """
    ops = classical_operators(split(alg, force=True), phi)
    mixed = (ops.chevalley_ext_sym + ops.harrison_ext_skew + ops.l1_skew + ops.l2_sym)
    return {
        'chevalley': ops.chevalley_skew.is_zero(),
        'harrison': ops.harrison_sym.is_zero(),
        'mixed': mixed.is_zero(),
    }


# ---------------------------------------------------------------------------
# Reports


@dataclass
class CohomologyReport:
    dim_Z2: int
    dim_B2: int
    dim_H2: int
    h0_basis: Subspace
    h1_dims: Tuple[int, int, int]
    z2_basis: List[Cochain2] = field(default_factory=list)
    b2_basis: List[Cochain2] = field(default_factory=list)
    inner_derivations_dim: int = 0

    def to_dict(self, include_basis: bool = False) -> dict:
        data = {
            'dim_Z2': self.dim_Z2,
            'dim_B2': self.dim_B2,
            'dim_H2': self.dim_H2,
            'h0_basis': self.h0_basis.to_rows(),
            'h1_dims': list(self.h1_dims),
            'inner_derivations_dim': self.inner_derivations_dim,
        }
        if include_basis:
            data['z2_basis'] = [cochain_to_dict(phi) for phi in self.z2_basis]
            data['b2_basis'] = [cochain_to_dict(phi) for phi in self.b2_basis]
        return data


@dataclass
class DerivationReport:
    """Z¹ = Der(P) next to Der(g_P), Der(A_P) and the inner derivations."""
    derivations: Subspace
    bracket_derivations: Subspace
    product_derivations: Subspace
    inner: Subspace

    @property
    def splits(self) -> bool:
        return self.derivations == self.bracket_derivations.intersect(self.product_derivations)

    @property
    def h1_dims(self) -> Tuple[int, int, int]:
        """(dim Z¹, dim B¹, dim H¹) with B¹ the inner derivations."""
        if not self.derivations.contains_subspace(self.inner):
            raise InvariantViolation("an inner derivation is not a derivation")
        return (self.derivations.dim, self.inner.dim,
                self.derivations.dim - self.inner.dim)


def inner_derivations(pair: PoissonPair) -> Subspace:
    """span{ad X = {X, ·}} in flattened End(P) coordinates."""
    n = pair.dim
    maps = [left_multiplication(pair.bracket, unit_vector(pair.bracket, i))
            for i in range(n)]
    return Subspace.span([flatten_map(m) for m in maps], n * n)


def derivation_spaces(alg: AlgebraStructure, force: bool = False,
                      d1: Optional[np.ndarray] = None) -> DerivationReport:
    pair = split(alg, force=force)
    return DerivationReport(
        derivations=nullspace(delta1_matrix(alg) if d1 is None else d1),
        bracket_derivations=nullspace(delta1_matrix(pair.bracket)),
        product_derivations=nullspace(delta1_matrix(pair.product)),
        inner=inner_derivations(pair),
    )


class CohomologyCalculator(LoggerMixin):
    """
    Builds and caches the coboundary matrices of one admissible algebra.
    """

    def __init__(self, alg: AlgebraStructure, require_admissible: bool = True):
        """
        Args:
            alg: Algebra whose cohomology is computed
            require_admissible: Reject non-admissible input
        """
        super().__init__()
        if require_admissible and not check_admissible(alg).passed:
            raise PreconditionError(f"{alg.name or 'algebra'} is not admissible")
        self.alg = alg
        self._d1 = None
        self._d2 = None

    @property
    def d1(self) -> np.ndarray:
        if self._d1 is None:
            self._d1 = delta1_matrix(self.alg)
            self.log_debug(f"assembled δ¹ matrix {self._d1.shape}")
        return self._d1

    @property
    def d2(self) -> np.ndarray:
        if self._d2 is None:
            with self.timed(f"δ² matrix of {self.alg.name or 'algebra'}"):
                self._d2 = delta2_matrix(self.alg)
            self.log_debug(f"assembled δ² matrix {self._d2.shape}")
        return self._d2

    def cocycles(self) -> Subspace:
        """Z² = ker δ²."""
        if self.alg.dim == 0:
            return Subspace.zero(0)
        return nullspace(self.d2)

    def coboundaries(self) -> Subspace:
        """B² = im δ¹."""
        n = self.alg.dim
        if n == 0:
            return Subspace.zero(0)
        return Subspace.span(list(self.d1.T), n ** 3)

    def check_complex(self):
        """δ² ∘ δ¹ = 0."""
        if self.alg.dim and not is_zero(self.d2 @ self.d1):
            raise InvariantViolation("δ² ∘ δ¹ is not zero")

    def report(self, include_basis: bool = False, two_sided: bool = False) -> CohomologyReport:
        n = self.alg.dim
        self.check_complex()
        z2 = self.cocycles()
        b2 = self.coboundaries()
        if not z2.contains_subspace(b2):
            raise InvariantViolation("B² is not contained in Z²")
        h1 = derivation_spaces(self.alg, force=True, d1=self.d1).h1_dims if n else (0, 0, 0)
        result = CohomologyReport(
            dim_Z2=z2.dim,
            dim_B2=b2.dim,
            dim_H2=z2.dim - b2.dim,
            h0_basis=delta0(self.alg, two_sided),
            h1_dims=h1,
            inner_derivations_dim=h1[1],
        )
        if include_basis:
            result.z2_basis = [unflatten_cochain2(v, n) for v in z2.basis]
            result.b2_basis = [unflatten_cochain2(v, n) for v in b2.basis]
        self.log_info(f"cohomology of {self.alg.name or 'algebra'}: "
                      f"Z²={z2.dim}, B²={b2.dim}, H²={result.dim_H2}")
        return result


def cohomology_report(alg: AlgebraStructure, include_basis: bool = False,
                      two_sided: bool = False) -> CohomologyReport:
    """Exact dims of Z², B², H² plus H⁰ and H¹ data."""
    return CohomologyCalculator(alg).report(include_basis, two_sided)


def cocycle_basis(alg: AlgebraStructure) -> List[Cochain2]:
    """Basis of ker δ² as cochains."""
    return [unflatten_cochain2(v, alg.dim) for v in CohomologyCalculator(alg).cocycles().basis]
