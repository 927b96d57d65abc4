"""
Structure theory of admissible Poisson algebras.

Covers the bracket/product split, the Lie centre, idempotents and Pierce
decompositions, the radicals, compatible products for a fixed bracket and
the multiplication algebra generated by the operators L_x, R_x.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
import sympy

import config
from core.algebra import (AlgebraStructure, Cochain2, Cochain3, Element,
                          associator_tensor, element, is_anticommutative,
                          left_multiplication, multiply, power,
                          right_multiplication, unit_vector)
from core.exactnum import (Subspace, format_rational, identity, is_zero,
                           nullspace, random_array, rational_array,
                           solve_unique, to_rational, zeros)
from core.exceptions import (InvariantViolation, PreconditionError)
from core.identities import (IdentityReport, Witness, check_admissible,
                             check_comm_assoc, check_leibniz, check_lie,
                             leibniz_residual)
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class PoissonPair:
    """A bracket table (skew) and a product table (symmetric)."""
    bracket: AlgebraStructure
    product: AlgebraStructure
    name: Optional[str] = None

    def __post_init__(self):
        if self.bracket.dim != self.product.dim:
            raise PreconditionError(
                f"bracket of dimension {self.bracket.dim}, "
                f"product of dimension {self.product.dim}")

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def validate(self) -> IdentityReport:
        """Jacobi, commutative associativity and Leibniz, all on basis triples."""
        report = check_lie(self.bracket)
        report.merge(check_comm_assoc(self.product))
        report.merge(check_leibniz(self.bracket, self.product))
        return report

    def require_valid(self):
        report = self.validate()
        if not report.passed:
            failed = sorted(k for k, v in report.verdicts.items() if not v)
            raise PreconditionError(f"not a Poisson pair: {', '.join(failed)} fails")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoissonPair):
            return NotImplemented
        return self.bracket == other.bracket and self.product == other.product

    __hash__ = None


def split(alg: AlgebraStructure, force: bool = False) -> PoissonPair:
    """
    {X,Y} = ½(XY − YX) and X•Y = ½(XY + YX).

    Args:
        alg: Admissible algebra
        force: Skip the admissibility precondition (exploratory use)

    Raises:
        PreconditionError: if alg is not admissible and force is False
    """
    if not force and not check_admissible(alg).passed:
        raise PreconditionError(f"{alg.name or 'algebra'} is not admissible")
    halves = alg.as_cochain()
    pair = PoissonPair(halves.skew_part().as_algebra(alg.name and f"{alg.name}_bracket"),
                       halves.symmetric_part().as_algebra(alg.name and f"{alg.name}_product"),
                       alg.name)
    if not force and not pair.validate().passed:
        raise InvariantViolation("split of an admissible algebra is not a Poisson pair")
    return pair


def combine(pair: PoissonPair, validate: bool = True,
            name: Optional[str] = None) -> AlgebraStructure:
    """X·Y = {X,Y} + X•Y."""
    if validate:
        pair.require_valid()
    return AlgebraStructure(pair.bracket.c + pair.product.c, name or pair.name)


def lie_center(pair: PoissonPair) -> Subspace:
    """{x : {x, e_j} = 0 for all j}."""
    n = pair.dim
    # rows (j, k), columns i
    matrix = np.transpose(pair.bracket.c, (1, 2, 0)).reshape(n * n, n)
    return nullspace(matrix)


# ---------------------------------------------------------------------------
# Idempotents and Pierce decompositions


def is_idempotent(alg: AlgebraStructure, e) -> bool:
    e = element(e)
    return not is_zero(e) and bool(np.all(multiply(alg, e, e) == e))


def _solve_idempotents_exactly(alg: AlgebraStructure) -> List[Element]:
    """Rational solutions of x·x = x for dim ≤ 2 via sympy."""
    symbols = sympy.symbols(f"x0:{alg.dim}")
    x = np.array(symbols, dtype=object)
    table = np.vectorize(lambda q: sympy.Rational(q.numerator, q.denominator),
                         otypes=[object])(alg.c)
    square = np.tensordot(np.tensordot(x, table, axes=(0, 0)), x, axes=(0, 0))
    equations = [sympy.expand(square[k] - x[k]) for k in range(alg.dim)]
    found = []
    for solution in sympy.solve(equations, symbols, dict=True):
        free = [s for s in symbols if s not in solution]
        # one-parameter families: sample the free coordinates
        for sample in itertools.product((0, 1), repeat=len(free)):
            point = dict(zip(free, sample))
            values = [sympy.nsimplify(solution.get(s, s).subs(point)) for s in symbols]
            if all(v.is_rational for v in values):
                found.append(element([to_rational(v) for v in values]))
    return found


def find_idempotents(alg: AlgebraStructure,
                     search_budget: int = config.IDEMPOTENT_SEARCH_BUDGET) -> List[Element]:
    """
    Nonzero idempotents found by (a) basis vectors, (b) a coefficient grid up
    to `search_budget` points, (c) exact solving when dim ≤ 2.

    Not complete for dim ≥ 3.
    """
    candidates = [unit_vector(alg, i) for i in range(alg.dim)]
    grid = [to_rational(v) for v in config.IDEMPOTENT_GRID]
    for coords in itertools.islice(itertools.product(grid, repeat=alg.dim), search_budget):
        candidates.append(element(coords))
    if 1 <= alg.dim <= 2:
        candidates.extend(_solve_idempotents_exactly(alg))

    found: List[Element] = []
    seen = set()
    for e in candidates:
        key = tuple(e)
        if key in seen:
            continue
        seen.add(key)
        if is_idempotent(alg, e):
            found.append(e)
    logger.debug(f"found {len(found)} idempotents in {alg.name or 'algebra'}")
    return found


@dataclass
class PierceDecomposition:
    """P = P_{0,0} ⊕ P_{1,1} for an idempotent e."""
    idempotent: Element
    p00: Subspace
    p11: Subspace

    def to_dict(self) -> dict:
        return {
            'idempotent': [format_rational(v) for v in self.idempotent],
            'p00': self.p00.to_rows(),
            'p11': self.p11.to_rows(),
            'dims': [self.p00.dim, self.p11.dim],
            'is_unit': self.p11.is_whole(),
        }


def _eigenspace(matrix: np.ndarray, value: int) -> Subspace:
    return nullspace(matrix - value * identity(matrix.shape[0]))


def _check_closed(alg: AlgebraStructure, space: Subspace, label: str):
    vectors = space.vectors()
    for x in vectors:
        for y in vectors:
            if not space.contains(multiply(alg, x, y)):
                raise InvariantViolation(f"{label} is not closed under multiplication")


def pierce(alg: AlgebraStructure, e, require_admissible: bool = True) -> PierceDecomposition:
    """
    Eigenspace decomposition of L_e, R_e for a nonzero idempotent e.

    Raises:
        PreconditionError: e is not idempotent, mixed eigenspaces P_{0,1} or
            P_{1,0} are nonzero, or an eigenvalue other than 0/1 occurs
    """
    e = element(e)
    if require_admissible and not check_admissible(alg).passed:
        raise PreconditionError(f"{alg.name or 'algebra'} is not admissible")
    if not is_idempotent(alg, e):
        raise PreconditionError("element is not a nonzero idempotent")

    left = left_multiplication(alg, e)
    right = right_multiplication(alg, e)
    left0, left1 = _eigenspace(left, 0), _eigenspace(left, 1)
    right0, right1 = _eigenspace(right, 0), _eigenspace(right, 1)

    if left0.intersect(right1).dim or left1.intersect(right0).dim:
        raise PreconditionError("mixed Pierce components P_{0,1}/P_{1,0} are nonzero")
    p00 = left0.intersect(right0)
    p11 = left1.intersect(right1)
    if p00.dim + p11.dim != alg.dim:
        raise PreconditionError("L_e has an eigenvalue other than 0 and 1 "
                                "(input is not admissible)")

    _check_closed(alg, p00, "P_{0,0}")
    _check_closed(alg, p11, "P_{1,1}")
    return PierceDecomposition(e, p00, p11)


def pierce_multi(alg: AlgebraStructure, es: Sequence) -> List[Subspace]:
    """
    Decomposition by pairwise orthogonal idempotents.

    Returns:
        [∩ P^i_{0,0}, P^1_{1,1}, ..., P^k_{1,1}]
    """
    es = [element(e) for e in es]
    for a, b in itertools.permutations(range(len(es)), 2):
        if not is_zero(multiply(alg, es[a], es[b])):
            raise PreconditionError(f"idempotents {a} and {b} are not orthogonal")
    pieces = [pierce(alg, e) for e in es]
    kernel = Subspace.whole(alg.dim)
    for piece in pieces:
        kernel = kernel.intersect(piece.p00)
    summands = [kernel] + [piece.p11 for piece in pieces]
    total = Subspace.zero(alg.dim)
    for s in summands:
        total = total + s
    if sum(s.dim for s in summands) != alg.dim or not total.is_whole():
        raise InvariantViolation("Pierce summands do not form a direct sum of the space")
    return summands


def find_unit(alg: AlgebraStructure) -> Optional[Element]:
    """The unit element if there is one, confirmed by p11 = whole space."""
    n = alg.dim
    if n == 0:
        return None
    rows = []
    rhs = []
    eye = identity(n)
    for j in range(n):
        for k in range(n):
            rows.append(alg.c[:, j, k])      # u·e_j
            rhs.append(eye[j, k])
            rows.append(alg.c[j, :, k])      # e_j·u
            rhs.append(eye[j, k])
    try:
        u = solve_unique(np.array(rows, dtype=object), rhs)
    except PreconditionError:
        return None
    if not pierce(alg, u, require_admissible=False).p11.is_whole():
        raise InvariantViolation("unit element does not act as identity")
    return u


# ---------------------------------------------------------------------------
# Radicals


@dataclass
class RadicalReport:
    jacobson_of_product: Subspace
    nilradical: Subspace
    is_nilalgebra: bool
    nil_certified: bool
    principal_idempotent: Optional[Element] = None
    notes: List[str] = field(default_factory=list)

    @property
    def nilradical_is_whole(self) -> bool:
        return self.nilradical.is_whole()

    def to_dict(self) -> dict:
        principal = self.principal_idempotent
        return {
            'jacobson_of_product': self.jacobson_of_product.to_rows(),
            'nilradical': self.nilradical.to_rows(),
            'nilradical_is_whole': self.nilradical_is_whole,
            'is_nilalgebra': self.is_nilalgebra,
            'nil_certified': self.nil_certified,
            'principal_idempotent': None if principal is None
            else [format_rational(v) for v in principal],
            'notes': list(self.notes),
        }


def trace_form_radical(product: AlgebraStructure) -> Subspace:
    """Kernel of (x, y) ↦ trace(L_{x•y}) for a commutative associative product."""
    traces = np.array([sum(product.c[i, j, j] for j in range(product.dim))
                       for i in range(product.dim)], dtype=object)
    form = np.tensordot(product.c, traces, axes=(2, 0)) if product.dim else zeros((0, 0))
    return nullspace(form)


def largest_ideal_in(alg: AlgebraStructure, space: Subspace) -> Subspace:
    """
    Greatest subspace W ⊆ space with W·P + P·W ⊆ W, by the descending
    iteration W_{k+1} = {x ∈ W_k : x·P ∪ P·x ⊆ W_k}.
    """
    n = alg.dim
    operators = []
    for j in range(n):
        ej = unit_vector(alg, j)
        operators.append(right_multiplication(alg, ej))
        operators.append(left_multiplication(alg, ej))

    current = space
    while current.dim:
        basis = current.as_matrix()
        annihilator = nullspace(basis).as_matrix()
        if annihilator.shape[0] == 0:
            return current
        constraints = np.vstack([annihilator @ op @ basis.T for op in operators])
        coefficients = nullspace(constraints)
        shrunk = Subspace.span([np.array(a, dtype=object) @ basis
                                for a in coefficients.basis], n)
        if shrunk == current:
            return current
        current = shrunk
    return current


def largest_lie_ideal_in(pair: PoissonPair, space: Subspace) -> Subspace:
    """Greatest Lie ideal of the bracket contained in `space`."""
    return largest_ideal_in(pair.bracket, space)


def is_nilpotent(alg: AlgebraStructure, x) -> bool:
    """x^{n+1} = 0; sufficient under power associativity."""
    return is_zero(power(alg, x, alg.dim + 1))


def radicals(alg: AlgebraStructure, trials: int = config.NIL_TRIALS,
             rng: Optional[np.random.Generator] = None) -> RadicalReport:
    """
    J(A_P) by the trace form, N(P) by descending fixpoint inside J(A_P),
    nilalgebra verdict by sampling and a principal idempotent candidate.

    Raises:
        PreconditionError: if alg is not admissible
    """
    rng = rng if rng is not None else np.random.default_rng(config.DEFAULT_SEED)
    pair = split(alg)
    jacobson = trace_form_radical(pair.product)
    nil = largest_ideal_in(alg, jacobson)

    samples = [unit_vector(alg, i) for i in range(alg.dim)]
    samples += [random_array(rng, alg.dim) for _ in range(trials)]
    nilalgebra = all(is_nilpotent(alg, x) for x in samples)
    certified = nilalgebra and is_anticommutative(alg)

    notes = []
    if nil.is_whole():
        notes.append("nilradical is the whole algebra (the algebra is a nilalgebra)")
    if nilalgebra and not certified:
        notes.append("nilalgebra verdict is sampled, not certified")

    principal = None
    best = -1
    for e in find_idempotents(alg):
        try:
            dim11 = pierce(alg, e, require_admissible=False).p11.dim
        except (PreconditionError, InvariantViolation):
            continue
        if dim11 > best:
            principal, best = e, dim11

    logger.info(f"radicals of {alg.name or 'algebra'}: dim J = {jacobson.dim}, "
                f"dim N = {nil.dim}")
    return RadicalReport(jacobson, nil, nilalgebra, certified, principal, notes)


# ---------------------------------------------------------------------------
# Compatible products


@dataclass
class CompatibleProducts:
    """
    Symmetric products satisfying Leibniz with a fixed bracket.

    The set is the linear space `space`; Poisson products are the points
    where `associativity_residual` vanishes.
    """
    bracket: AlgebraStructure
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self) -> List[Cochain2]:
        n = self.bracket.dim
        return [Cochain2(np.array(row, dtype=object).reshape(n, n, n))
                for row in self.space.basis]

    def product_at(self, params: Sequence) -> AlgebraStructure:
        params = rational_array(list(params)).reshape(-1)
        if params.shape[0] != self.dim:
            raise PreconditionError(f"expected {self.dim} parameters")
        n = self.bracket.dim
        flat = params @ self.space.as_matrix() if self.dim else zeros(n ** 3)
        return AlgebraStructure(flat.reshape(n, n, n))

    def associativity_residual(self, params: Sequence) -> Cochain3:
        return Cochain3(associator_tensor(self.product_at(params)))

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'basis': self.space.to_rows()}


def compatible_products(bracket: AlgebraStructure) -> CompatibleProducts:
    """
    Solution space of the linear constraints {symmetry, Leibniz} on a product
    tensor for a fixed Lie bracket.

    Raises:
        PreconditionError: if bracket is not a Lie algebra
    """
    if not check_lie(bracket).passed:
        raise PreconditionError(f"{bracket.name or 'bracket'} is not a Lie algebra")
    n = bracket.dim
    generators = []
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        for k in range(n):
            s = zeros((n, n, n))
            s[i, j, k] = s[j, i, k] = Fraction(1)
            generators.append(s)
    if not generators:
        return CompatibleProducts(bracket, Subspace.zero(0))
    columns = [leibniz_residual(bracket.c, s).reshape(-1) for s in generators]
    kernel = nullspace(np.array(columns, dtype=object).T)
    products = [sum((coeff * g for coeff, g in zip(vec, generators) if coeff),
                    zeros((n, n, n))).reshape(-1)
                for vec in kernel.basis]
    return CompatibleProducts(bracket, Subspace.span(products, n ** 3))


# ---------------------------------------------------------------------------
# Multiplication algebra and simplicity


def ideal_closure(alg: AlgebraStructure, vectors: Sequence) -> Subspace:
    """Smallest two-sided ideal containing `vectors`."""
    n = alg.dim
    operators = []
    for j in range(n):
        ej = unit_vector(alg, j)
        operators.append(left_multiplication(alg, ej))
        operators.append(right_multiplication(alg, ej))
    current = Subspace.span(vectors, n)
    while True:
        images = [op @ v for op in operators for v in current.vectors()]
        grown = current + Subspace.span(images, n) if images else current
        if grown == current:
            return current
        current = grown


def derived_square(alg: AlgebraStructure) -> Subspace:
    """P² = span{e_i · e_j}."""
    n = alg.dim
    return Subspace.span([alg.c[i, j] for i in range(n) for j in range(n)], n)


@dataclass
class MultiplicationAlgebraReport:
    dim: int
    basis: List[np.ndarray]
    relations: IdentityReport
    verdict: str
    ideal: Optional[Subspace]
    derived_dim: int

    def to_dict(self) -> dict:
        return {
            'dim': self.dim,
            'relations': self.relations.to_dict(),
            'verdict': self.verdict,
            'ideal': None if self.ideal is None else self.ideal.to_rows(),
            'derived_dim': self.derived_dim,
        }


def _operator_relations(alg: AlgebraStructure, samples: Sequence[Element]) -> IdentityReport:
    """L_xR_x = R_xL_x, 4L_{x²} = 3L_x² − R_x² + 2R_xL_x, 4R_{x²} = 3R_x² − L_x² + 2R_xL_x."""
    report = IdentityReport()
    names = ('operators_commute', 'left_square_relation', 'right_square_relation')
    for x in samples:
        left = left_multiplication(alg, x)
        right = right_multiplication(alg, x)
        x2 = multiply(alg, x, x)
        residuals = (
            left @ right - right @ left,
            4 * left_multiplication(alg, x2) - (3 * left @ left - right @ right
                                                + 2 * right @ left),
            4 * right_multiplication(alg, x2) - (3 * right @ right - left @ left
                                                 + 2 * right @ left),
        )
        for name, residual in zip(names, residuals):
            if name not in report.witnesses and not is_zero(residual):
                report.record(name, Witness((), list(residual.reshape(-1)), list(x)))
    for name in names:
        report.verdicts.setdefault(name, True)
    return report


def multiplication_algebra(alg: AlgebraStructure,
                           trials: int = config.OPERATOR_RELATION_TRIALS,
                           rng: Optional[np.random.Generator] = None) -> MultiplicationAlgebraReport:
    """
    M(P) ⊆ End(P) generated by L_x, R_x, the three operator relations and a
    simplicity semi-decision by ideal closures.
    """
    rng = rng if rng is not None else np.random.default_rng(config.DEFAULT_SEED)
    n = alg.dim
    generators = []
    for i in range(n):
        ei = unit_vector(alg, i)
        generators.append(left_multiplication(alg, ei))
        generators.append(right_multiplication(alg, ei))

    span = Subspace.span([g.reshape(-1) for g in generators], n * n)
    while True:
        words = [g @ np.array(m, dtype=object).reshape(n, n)
                 for g in generators for m in span.basis]
        grown = span + Subspace.span([w.reshape(-1) for w in words], n * n) \
            if words else span
        if grown == span:
            break
        span = grown
    basis = [np.array(m, dtype=object).reshape(n, n) for m in span.basis]

    samples = [unit_vector(alg, i) for i in range(n)]
    samples += [random_array(rng, n) for _ in range(trials)]
    relations = _operator_relations(alg, samples)

    derived = derived_square(alg)
    ideal = None
    if derived.dim == 0:
        if n:
            ideal = Subspace.span([unit_vector(alg, 0)], n)
    else:
        if derived.dim < n:
            # P² is a two-sided ideal
            ideal = derived
        candidates = samples[:n] + [random_array(rng, n) for _ in range(config.SIMPLICITY_TRIALS)]
        for v in candidates:
            if is_zero(v):
                continue
            closure = ideal_closure(alg, [v])
            if closure.dim < n and (ideal is None or closure.dim < ideal.dim):
                ideal = closure
    verdict = 'not_simple' if ideal is not None or n == 0 else 'probably_simple'
    return MultiplicationAlgebraReport(span.dim, basis, relations, verdict, ideal, derived.dim)
