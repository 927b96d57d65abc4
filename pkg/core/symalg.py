"""
Truncated symmetric algebras S_p(g) = S(g)/I_{p+1} of a Lie algebra g with
the linear Poisson bracket

    P₀(f, h) = Σ_{i,j} C^k_{ij} e_k ∂f/∂e_i ∂h/∂e_j

and the polynomial product. Monomials are ordered by degree, then by
descending exponent vectors, so index 0 is the constant 1 and indices
1..n are the generators.

Tables are assembled with sympy ``Poly`` and kept sparse
({(a, b): {k: coefficient}}); the dense PoissonPair is built from them.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy import Poly, QQ

import config
from core.algebra import AlgebraStructure, Cochain2, left_multiplication
from core.exactnum import format_rational, to_rational, zeros
from core.exceptions import InvariantViolation, PreconditionError
from core.identities import check_lie
from core.structure import PoissonPair
from utils.logger import LoggerMixin

Exponents = Tuple[int, ...]
SparseTable = Dict[Tuple[int, int], Dict[int, Fraction]]


@dataclass(frozen=True)
class LiePresentation:
    """A Lie algebra given by skew structure constants and generator names."""
    bracket: AlgebraStructure
    generators: Tuple[str, ...]

    def __post_init__(self):
        if len(self.generators) != self.bracket.dim:
            raise PreconditionError(f"{len(self.generators)} generator names for a "
                                    f"Lie algebra of dimension {self.bracket.dim}")
        report = check_lie(self.bracket)
        if not report.passed:
            raise PreconditionError(f"{self.bracket.name or 'bracket'} is not a Lie algebra")

    @property
    def dim(self) -> int:
        return self.bracket.dim

    @classmethod
    def from_brackets(cls, generators: Sequence[str],
                      brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                      name: Optional[str] = None) -> 'LiePresentation':
        alg = AlgebraStructure.from_products(len(generators), brackets, name, skew=True)
        return cls(alg, tuple(generators))

    @classmethod
    def from_algebra(cls, alg: AlgebraStructure,
                     generators: Optional[Sequence[str]] = None) -> 'LiePresentation':
        names = tuple(generators) if generators else tuple(f"e{i + 1}" for i in range(alg.dim))
        return cls(alg, names)


@dataclass(frozen=True)
class MonomialBasis:
    generators: Tuple[str, ...]
    truncation: int
    monomials: Tuple[Exponents, ...]

    @classmethod
    def build(cls, generators: Sequence[str], truncation: int) -> 'MonomialBasis':
        n = len(generators)
        monomials = []
        for degree in range(truncation + 1):
            level = [e for e in itertools.product(range(degree + 1), repeat=n)
                     if sum(e) == degree]
            monomials.extend(sorted(level, reverse=True))
        basis = cls(tuple(generators), truncation, tuple(monomials))
        if len(basis) != comb(n + truncation, truncation):
            raise InvariantViolation("monomial count does not match C(n+p, p)")
        return basis

    def __len__(self) -> int:
        return len(self.monomials)

    def index(self, exponents: Exponents) -> int:
        return self._positions()[tuple(exponents)]

    def _positions(self) -> Dict[Exponents, int]:
        cache = self.__dict__.get('_position_cache')
        if cache is None:
            cache = {m: i for i, m in enumerate(self.monomials)}
            object.__setattr__(self, '_position_cache', cache)
        return cache

    def degree(self, index: int) -> int:
        return sum(self.monomials[index])

    def label(self, index: int) -> str:
        parts = []
        for name, power in zip(self.generators, self.monomials[index]):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return '*'.join(parts) or '1'

    def labels(self) -> List[str]:
        return [self.label(i) for i in range(len(self))]


@dataclass
class SymmetricAlgebra:
    """S_p(g) with sparse bracket/product tables and the dense pair."""
    lie: LiePresentation
    basis: MonomialBasis
    bracket_table: SparseTable
    product_table: SparseTable
    pair: PoissonPair

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_algebra(self) -> AlgebraStructure:
        """The combined admissible multiplication P₀ + •."""
        return AlgebraStructure(self.pair.bracket.c + self.pair.product.c, self.pair.name)


def _symbols(generators: Sequence[str]) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(name) for name in generators)


def _coefficients(poly: Poly) -> Dict[Exponents, Fraction]:
    return {tuple(e): to_rational(v) for e, v in poly.as_dict().items() if v != 0}


class SymmetricAlgebraBuilder(LoggerMixin):
    """
    Builds S_p(g) and evaluates P₀ and biderivation extensions on
    polynomials in the generators.
    """

    def __init__(self, lie: LiePresentation, truncation: int = config.DEFAULT_TRUNCATION):
        """
        Args:
            lie: Lie algebra g
            truncation: Keep monomials of degree ≤ truncation
        """
        super().__init__()
        if truncation < 1:
            raise PreconditionError("truncation degree must be at least 1")
        self.lie = lie
        self.truncation = truncation
        self.symbols = _symbols(lie.generators)
        self.basis = MonomialBasis.build(lie.generators, truncation)
        self._lie_polys = self._generator_values(self._bracket_on_generators())

    def _bracket_on_generators(self) -> Dict[Tuple[int, int], sympy.Expr]:
        c = self.lie.bracket.c
        values = {}
        for i in range(self.lie.dim):
            for j in range(self.lie.dim):
                expr = sum((sympy.Rational(v.numerator, v.denominator) * self.symbols[k]
                            for k, v in enumerate(c[i, j]) if v != 0), sympy.Integer(0))
                if expr != 0:
                    values[(i, j)] = expr
        return values

    def _generator_values(self, values: Mapping[Tuple[int, int], object]) -> Dict[Tuple[int, int], Poly]:
        polys = {}
        for (i, j), value in values.items():
            poly = self.poly(value)
            if not poly.is_zero:
                polys[(i, j)] = poly
        return polys

    def poly(self, value) -> Poly:
        if isinstance(value, Poly):
            return value
        if isinstance(value, str):
            value = sympy.sympify(value, locals={s.name: s for s in self.symbols})
        return Poly(value, *self.symbols, domain=QQ)

    def monomial(self, index: int) -> Poly:
        return Poly.from_dict({self.basis.monomials[index]: 1}, *self.symbols, domain=QQ)

    def gradient(self, f: Poly) -> List[Poly]:
        return [f.diff(s) for s in self.symbols]

    def apply_bivector(self, values: Mapping[Tuple[int, int], Poly], f: Poly, h: Poly) -> Poly:
        """Σ_{i,j} values[i,j] ∂f/∂e_i ∂h/∂e_j."""
        return self._contract(values, self.gradient(f), self.gradient(h))

    def _contract(self, values: Mapping[Tuple[int, int], Poly],
                  df: Sequence[Poly], dh: Sequence[Poly]) -> Poly:
        total = Poly(0, *self.symbols, domain=QQ)
        for (i, j), value in values.items():
            if df[i].is_zero or dh[j].is_zero:
                continue
            total = total + value * df[i] * dh[j]
        return total

    def bracket(self, f: Poly, h: Poly) -> Poly:
        """P₀(f, h) in S(g), untruncated."""
        return self.apply_bivector(self._lie_polys, f, h)

    def _truncate(self, poly: Poly) -> Dict[int, Fraction]:
        out = {}
        for exps, v in _coefficients(poly).items():
            if sum(exps) <= self.truncation:
                out[self.basis.index(exps)] = v
        return out

    def table(self, values: Mapping[Tuple[int, int], Poly]) -> SparseTable:
        gradients = [self.gradient(self.monomial(a)) for a in range(len(self.basis))]
        table = {}
        for a, b in itertools.product(range(len(self.basis)), repeat=2):
            entry = self._truncate(self._contract(values, gradients[a], gradients[b]))
            if entry:
                table[(a, b)] = entry
        return table

    def product_table(self) -> SparseTable:
        table = {}
        n = len(self.basis)
        for a, b in itertools.product(range(n), repeat=2):
            exps = tuple(x + y for x, y in zip(self.basis.monomials[a], self.basis.monomials[b]))
            if sum(exps) <= self.truncation:
                table[(a, b)] = {self.basis.index(exps): Fraction(1)}
        return table

    def dense(self, table: SparseTable) -> np.ndarray:
        n = len(self.basis)
        c = zeros((n, n, n))
        for (a, b), entry in table.items():
            for k, v in entry.items():
                c[a, b, k] = v
        return c

    def build(self, validate: Optional[bool] = None) -> SymmetricAlgebra:
        """
        Args:
            validate: Run the dense Lie/commutative-associative/Leibniz checks;
                by default only up to config.SYMALG_VALIDATE_LIMIT monomials
        """
        with self.timed(f"tables of S_{self.truncation}"):
            bracket_table = self.table(self._lie_polys)
            product_table = self.product_table()
        name = f"S_{self.truncation}({self.lie.bracket.name or 'g'})"
        pair = PoissonPair(AlgebraStructure(self.dense(bracket_table), f"{name}_bracket"),
                           AlgebraStructure(self.dense(product_table), f"{name}_product"),
                           name)
        if validate is None:
            validate = len(self.basis) <= config.SYMALG_VALIDATE_LIMIT
        if validate:
            report = pair.validate()
            if not report.passed:
                raise InvariantViolation(f"{name} is not a Poisson pair")
        self.log_info(f"built {name}: {len(self.basis)} monomials, "
                      f"{len(bracket_table)} nonzero brackets")
        return SymmetricAlgebra(self.lie, self.basis, bracket_table, product_table, pair)

    def extend(self, generator_values: Mapping[Tuple[int, int], object]) -> SparseTable:
        """
        Biderivation extension of a skew map given on generator pairs.
        Each (i, j) also sets (j, i) to the negated value.
        """
        values = {}
        for (i, j), value in generator_values.items():
            poly = self.poly(value)
            if i == j:
                if not poly.is_zero:
                    raise PreconditionError(f"a skew map vanishes at ({i},{i})")
                continue
            if (j, i) in generator_values and not (self.poly(generator_values[(j, i)]) + poly).is_zero:
                raise PreconditionError(f"values at ({i},{j}) and ({j},{i}) are not skew")
            values[(i, j)] = poly
            values[(j, i)] = -poly
        return self.table(self._generator_values(values))


def build_symalg(lie: LiePresentation, truncation: int = config.DEFAULT_TRUNCATION) -> PoissonPair:
    return SymmetricAlgebraBuilder(lie, truncation).build().pair


def symmetric_algebra(lie: LiePresentation,
                      truncation: int = config.DEFAULT_TRUNCATION,
                      validate: Optional[bool] = None) -> SymmetricAlgebra:
    return SymmetricAlgebraBuilder(lie, truncation).build(validate)


@dataclass
class AdSpectrum:
    diagonal: bool
    eigenvalues: List[Fraction] = field(default_factory=list)
    witness: Optional[Tuple[int, int]] = None

    def multiset(self) -> List[Fraction]:
        return sorted(self.eigenvalues)

    def to_dict(self) -> dict:
        return {
            'diagonal': self.diagonal,
            'eigenvalues': [format_rational(v) for v in self.eigenvalues],
            'witness': None if self.witness is None else list(self.witness),
        }


def ad_spectrum(pair: PoissonPair, x) -> AdSpectrum:
    """Eigenvalues of ad x = {x, ·} when it is diagonal in the monomial basis."""
    matrix = left_multiplication(pair.bracket, x)
    off = [(int(i), int(j)) for i, j in np.argwhere(matrix != 0) if i != j]
    if off:
        return AdSpectrum(False, witness=off[0])
    return AdSpectrum(True, [to_rational(matrix[i, i]) for i in range(pair.dim)])


def biderivation_extend(sym: SymmetricAlgebra,
                        generator_values: Mapping[Tuple[int, int], object]) -> Cochain2:
    """
    The biderivation of S(g) with the given values on generator pairs,
    restricted to S_p(g) (terms of degree > p dropped).
    """
    builder = SymmetricAlgebraBuilder(sym.lie, sym.basis.truncation)
    table = builder.extend(generator_values)
    return Cochain2(builder.dense(table))


def preserves_truncation(generator_values: Mapping[Tuple[int, int], object],
                         sym: SymmetricAlgebra) -> bool:
    """
    The extension maps I_{p+1} into itself iff every nonzero value on
    generators has degree ≥ 2.
    """
    builder = SymmetricAlgebraBuilder(sym.lie, sym.basis.truncation)
    for value in generator_values.values():
        poly = builder.poly(value)
        if not poly.is_zero and min(sum(e) for e in poly.monoms()) < 2:
            return False
    return True


def _sparse_table(cochain: Union[Cochain2, SparseTable]) -> SparseTable:
    if isinstance(cochain, dict):
        return cochain
    table = {}
    for a, b, k in np.argwhere(cochain.values != 0):
        table.setdefault((int(a), int(b)), {})[int(k)] = cochain.values[a, b, k]
    return table


def _apply(table: SparseTable, left: Mapping[int, Fraction], right: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    """Bilinear extension of a sparse table to sparse vectors."""
    out: Dict[int, Fraction] = {}
    for a, x in left.items():
        for b, y in right.items():
            entry = table.get((a, b))
            if not entry:
                continue
            for k, v in entry.items():
                out[k] = out.get(k, Fraction(0)) + x * y * v
    return {k: v for k, v in out.items() if v != 0}


def _combine(*terms: Tuple[int, Mapping[int, Fraction]]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for sign, vector in terms:
        for k, v in vector.items():
            out[k] = out.get(k, Fraction(0)) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def lichnerowicz_residual(sym: SymmetricAlgebra,
                          phi: Union[Cochain2, SparseTable],
                          max_total_degree: Optional[int] = None) -> Dict[Tuple[int, int, int], Dict[int, Fraction]]:
    """
    Nonzero values of δ_LPφ on monomial triples a < b < c, from the sparse
    tables (no dense cochain tensors). The constant monomial is skipped: it
    brackets to zero and every biderivation vanishes on it.

    δ_LPφ of a skew biderivation is alternating, so increasing triples
    suffice. With max_total_degree, only triples whose degrees sum to at
    most that bound are evaluated; for an extension that does not preserve
    the truncation, p + 1 keeps every intermediate value below the cut.
    """
    bracket = sym.bracket_table
    table = _sparse_table(phi)
    n = sym.dim

    def unit(i):
        return {i: Fraction(1)}

    residual = {}
    for a, b, c in itertools.combinations(range(1, n), 3):
        if max_total_degree is not None and \
                sym.basis.degree(a) + sym.basis.degree(b) + sym.basis.degree(c) > max_total_degree:
            continue
        x, y, z = unit(a), unit(b), unit(c)
        value = _combine(
            (1, _apply(bracket, x, table.get((b, c), {}))),
            (-1, _apply(bracket, y, table.get((a, c), {}))),
            (1, _apply(bracket, z, table.get((a, b), {}))),
            (-1, _apply(table, bracket.get((a, b), {}), z)),
            (1, _apply(table, bracket.get((a, c), {}), y)),
            (-1, _apply(table, bracket.get((b, c), {}), x)),
        )
        if value:
            residual[(a, b, c)] = value
    return residual


def truncation_is_ideal(sym: SymmetricAlgebra) -> bool:
    """
    I_{p+1} is closed under P₀ and multiplication: brackets of generators
    with degree-(p+1) monomials have no terms of degree ≤ p.
    """
    builder = SymmetricAlgebraBuilder(sym.lie, sym.basis.truncation)
    n, p = sym.lie.dim, sym.basis.truncation
    boundary = [e for e in itertools.product(range(p + 2), repeat=n) if sum(e) == p + 1]
    for exps in boundary:
        m = Poly.from_dict({exps: 1}, *builder.symbols, domain=QQ)
        for i in range(n):
            generator = Poly(builder.symbols[i], *builder.symbols, domain=QQ)
            for poly in (builder.bracket(generator, m), builder.bracket(m, generator)):
                if any(sum(e) <= p for e in _coefficients(poly)):
                    return False
    return True


# ---------------------------------------------------------------------------
# Lie algebras whose symmetric algebras are studied


def two_dim_nonabelian() -> LiePresentation:
    """[X, Y] = Y."""
    return LiePresentation.from_brackets(('X', 'Y'), {(0, 1): {1: 1}}, 'sym_ex1')


def graded_three() -> LiePresentation:
    """[X, Y_i] = i·Y_i for i = 1, 2."""
    return LiePresentation.from_brackets(('X', 'Y1', 'Y2'),
                                         {(0, 1): {1: 1}, (0, 2): {2: 2}}, 'sym_ex2')


def rigid_six() -> LiePresentation:
    """[X, Y_i] = i·Y_i, [Y₁, Y_i] = Y_{i+1} (i = 2, 3, 4), [Y₂, Y₃] = Y₅."""
    brackets = {(0, i): {i: i} for i in range(1, 6)}
    brackets.update({(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}})
    return LiePresentation.from_brackets(('X', 'Y1', 'Y2', 'Y3', 'Y4', 'Y5'), brackets, 'sym_ex3')


def torus_rank2() -> LiePresentation:
    """[X₁, Y₁] = Y₁, [X₂, Y₂] = Y₂; X₁, X₂ span a rank-2 torus."""
    return LiePresentation.from_brackets(('X1', 'X2', 'Y1', 'Y2'),
                                         {(0, 2): {2: 1}, (1, 3): {3: 1}}, 'torus_rank2')


RIGID_SIX_COCYCLE = {(1, 3): 'Y2**2'}
TORUS_COCYCLE = {(0, 1): '1'}
