"""
Polynomial identities of a single multiplication and the Σ₃ action on
associators.

Every identity checked here is multilinear, so it is decided exactly by
evaluating the residual tensor on all basis triples. A failed verdict carries
the lexicographically first failing triple and its residual.

Σ₃ convention: a permutation σ acts on a trilinear map by reordering its
arguments, A∘Φ_σ(X, Y, Z) = A(order_σ(X, Y, Z)), with

    id  → (X, Y, Z)     t12 → (Y, X, Z)     t13 → (Z, Y, X)
    t23 → (X, Z, Y)     c1  → (Y, Z, X)     c2  → (Z, X, Y)

so that Id + t13 annihilates flexible associators and Id − t12 + c1
annihilates exactly the associators satisfying
A(X,Y,Z) + A(Y,Z,X) − A(Y,X,Z) = 0.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

import config
from core.algebra import (AlgebraStructure, Cochain3, associator_tensor,
                          admissibility_pairing, multiply, permute_arguments,
                          powers, substitute_left, substitute_right, unit_vector)
from core.exactnum import (RationalLike, format_rational, is_zero, nullspace,
                           random_array, to_rational, zeros, Subspace)
from core.exceptions import DimensionMismatchError, PreconditionError
from utils.logger import get_logger

logger = get_logger(__name__)

PERMUTATIONS: Dict[str, Tuple[int, int, int]] = {
    'id': (0, 1, 2),
    't12': (1, 0, 2),
    't13': (2, 1, 0),
    't23': (0, 2, 1),
    'c1': (1, 2, 0),
    'c2': (2, 0, 1),
}


@dataclass
class Witness:
    """Where an identity fails: argument indices and the nonzero residual."""
    indices: Tuple[int, ...]
    residual: List[Fraction]
    element: Optional[List[Fraction]] = None

    def to_dict(self) -> dict:
        data = {
            'indices': list(self.indices),
            'residual': [format_rational(v) for v in self.residual],
        }
        if self.element is not None:
            data['element'] = [format_rational(v) for v in self.element]
        return data


@dataclass
class IdentityReport:
    """Verdicts per identity name; every failed verdict has a witness."""
    verdicts: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, Witness] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)

    def record(self, name: str, witness: Optional[Witness]) -> bool:
        self.verdicts[name] = witness is None
        if witness is None:
            self.witnesses.pop(name, None)
        else:
            self.witnesses[name] = witness
        return witness is None

    def merge(self, other: 'IdentityReport') -> 'IdentityReport':
        self.verdicts.update(other.verdicts)
        self.witnesses.update(other.witnesses)
        self.notes.update(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def __getitem__(self, name: str) -> bool:
        return self.verdicts[name]

    def to_dict(self) -> dict:
        return {
            'verdicts': dict(sorted(self.verdicts.items())),
            'witnesses': {k: w.to_dict() for k, w in sorted(self.witnesses.items())},
            'notes': dict(sorted(self.notes.items())),
        }


@dataclass(frozen=True)
class GroupAlgebraVector:
    """An element Σ coeffs[σ]·σ of the group algebra K[Σ₃]."""
    coeffs: Mapping[str, Fraction]

    def __post_init__(self):
        unknown = set(self.coeffs) - set(PERMUTATIONS)
        if unknown:
            raise ValueError(f"unknown permutations: {sorted(unknown)}")
        object.__setattr__(self, 'coeffs',
                           {k: to_rational(v) for k, v in self.coeffs.items()})

    @classmethod
    def of(cls, **coeffs: RationalLike) -> 'GroupAlgebraVector':
        return cls(coeffs)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs.values())

    def apply(self, tensor: np.ndarray) -> np.ndarray:
        """Σ_σ coeffs[σ] · tensor∘Φ_σ for a trilinear tensor."""
        out = zeros(tensor.shape)
        for name, coeff in self.coeffs.items():
            if coeff:
                out = out + coeff * permute_arguments(tensor, PERMUTATIONS[name])
        return out


FLEXIBLE_VECTOR = GroupAlgebraVector.of(id=1, t13=1)
EQ6_VECTOR = GroupAlgebraVector.of(id=1, t12=-1, c1=1)
SIGMA3_VECTOR = GroupAlgebraVector.of(id=2, t12=Fraction(1, 2), t13=1, c1=1,
                                      c2=Fraction(3, 2))


def _triple_witness(tensor: np.ndarray) -> Optional[Witness]:
    hit = Cochain3(tensor).first_nonzero()
    if hit is None:
        return None
    indices, residual = hit
    return Witness(indices, list(residual))


def _pair_witness(tensor: np.ndarray) -> Optional[Witness]:
    hits = np.argwhere(tensor != 0)
    if hits.size == 0:
        return None
    i, j = (int(v) for v in hits[0][:2])
    return Witness((i, j), list(tensor[i, j]))


def admissibility_residual(alg: AlgebraStructure) -> np.ndarray:
    """R(X,Y,Z) = 3A(X,Y,Z) − (XZ)Y − (YZ)X + (YX)Z + (ZX)Y on basis triples."""
    return admissibility_pairing(alg.c, alg.c)


def check_admissible(alg: AlgebraStructure) -> IdentityReport:
    report = IdentityReport()
    report.record('admissible', _triple_witness(admissibility_residual(alg)))
    return report


def _check_vector(alg: AlgebraStructure, name: str,
                  vector: GroupAlgebraVector) -> IdentityReport:
    report = IdentityReport()
    report.record(name, _triple_witness(vector.apply(associator_tensor(alg))))
    return report


def check_flexible(alg: AlgebraStructure) -> IdentityReport:
    """Polarized flexibility A(X,Y,Z) + A(Z,Y,X) = 0."""
    return _check_vector(alg, 'flexible', FLEXIBLE_VECTOR)


def check_eq6(alg: AlgebraStructure) -> IdentityReport:
    """A(X,Y,Z) + A(Y,Z,X) − A(Y,X,Z) = 0."""
    return _check_vector(alg, 'eq6', EQ6_VECTOR)


def check_sigma3(alg: AlgebraStructure) -> IdentityReport:
    """2A(X,Y,Z) + ½A(Y,X,Z) + A(Z,Y,X) + A(Y,Z,X) + (3/2)A(Z,X,Y) = 0."""
    return _check_vector(alg, 'sigma3', SIGMA3_VECTOR)


def jacobiator(bracket: np.ndarray) -> np.ndarray:
    """{{X,Y},Z} + {{Y,Z},X} + {{Z,X},Y} on basis triples."""
    left = substitute_left(bracket, bracket)
    return left + permute_arguments(left, (1, 2, 0)) + permute_arguments(left, (2, 0, 1))


def check_lie(bracket: AlgebraStructure) -> IdentityReport:
    """Skew-symmetry and the Jacobi identity."""
    report = IdentityReport()
    skew = report.record('skew_symmetric', _pair_witness(
        bracket.c + np.transpose(bracket.c, (1, 0, 2))))
    jacobi = report.record('jacobi', _triple_witness(jacobiator(bracket.c)))
    report.verdicts['lie'] = skew and jacobi
    if not report.verdicts['lie']:
        report.witnesses['lie'] = report.witnesses.get(
            'skew_symmetric', report.witnesses.get('jacobi'))
    return report


def check_lie_admissible(alg: AlgebraStructure) -> IdentityReport:
    """The commutator XY − YX is a Lie bracket."""
    commutator = alg.c - np.transpose(alg.c, (1, 0, 2))
    report = IdentityReport()
    report.record('lie_admissible', _triple_witness(jacobiator(commutator)))
    return report


def check_comm_assoc(product: AlgebraStructure) -> IdentityReport:
    """Commutativity and associativity of a product table."""
    report = IdentityReport()
    comm = report.record('commutative', _pair_witness(
        product.c - np.transpose(product.c, (1, 0, 2))))
    assoc = report.record('associative', _triple_witness(associator_tensor(product)))
    report.verdicts['comm_assoc'] = comm and assoc
    if not report.verdicts['comm_assoc']:
        report.witnesses['comm_assoc'] = report.witnesses.get(
            'commutative', report.witnesses.get('associative'))
    return report


def leibniz_residual(bracket: np.ndarray, product: np.ndarray) -> np.ndarray:
    """{X•Y, Z} − X•{Y,Z} − {X,Z}•Y on basis triples."""
    return (substitute_left(bracket, product)
            - substitute_right(product, bracket)
            - permute_arguments(substitute_left(product, bracket), (0, 2, 1)))


def check_leibniz(bracket: AlgebraStructure, product: AlgebraStructure) -> IdentityReport:
    if bracket.dim != product.dim:
        raise DimensionMismatchError(
            f"bracket of dimension {bracket.dim}, product of dimension {product.dim}")
    report = IdentityReport()
    report.record('leibniz', _triple_witness(leibniz_residual(bracket.c, product.c)))
    return report


def check_power_associative(alg: AlgebraStructure,
                            trials: int = config.DEFAULT_POWER_TRIALS,
                            max_total_degree: int = config.DEFAULT_POWER_DEGREE,
                            rng: Optional[np.random.Generator] = None) -> IdentityReport:
    """
    Check X^i · X^j = X^{i+j} for i + j ≤ max_total_degree on every basis
    element and on `trials` random elements.
    """
    rng = rng if rng is not None else np.random.default_rng(config.DEFAULT_SEED)
    report = IdentityReport()
    if not check_admissible(alg).passed:
        report.notes['power_associative'] = 'non-applicable: algebra is not admissible'

    samples = [unit_vector(alg, i) for i in range(alg.dim)]
    samples += [random_array(rng, alg.dim) for _ in range(trials)]

    for x in samples:
        pw = powers(alg, x, max_total_degree)
        for i in range(1, max_total_degree):
            for j in range(1, max_total_degree - i + 1):
                diff = multiply(alg, pw[i], pw[j]) - pw[i + j]
                if not is_zero(diff):
                    report.record('power_associative',
                                  Witness((i, j), list(diff), list(x)))
                    return report
    report.record('power_associative', None)
    return report


def sigma3_annihilates(alg: AlgebraStructure, v: GroupAlgebraVector) -> bool:
    """True iff Σ_σ v[σ]·A(Φ_σ(e_i, e_j, e_k)) = 0 for all basis triples."""
    if v.is_zero():
        raise PreconditionError("the group algebra vector must be nonzero")
    return is_zero(v.apply(associator_tensor(alg)))


def identity_constraint_matrix(v: GroupAlgebraVector, n: int) -> np.ndarray:
    """
    Matrix of T ↦ Σ_σ v[σ]·T∘Φ_σ on arbitrary trilinear tensors T,
    flattened in C order of the (n, n, n, n) tensor.
    """
    size = n ** 4
    index = np.arange(size).reshape((n,) * 4)
    rows = np.arange(size)
    matrix = zeros((size, size))
    for name, coeff in v.coeffs.items():
        if coeff:
            cols = permute_arguments(index, PERMUTATIONS[name]).reshape(-1)
            matrix[rows, cols] = matrix[rows, cols] + coeff
    return matrix


def annihilator_space(vectors: Sequence[GroupAlgebraVector], n: int) -> Subspace:
    """Trilinear tensors killed by every vector in `vectors`."""
    return nullspace(np.vstack([identity_constraint_matrix(v, n) for v in vectors]))


IDENTITY_CHECKS: Dict[str, Callable[[AlgebraStructure], IdentityReport]] = {
    'admissible': check_admissible,
    'flexible': check_flexible,
    'eq6': check_eq6,
    'sigma3': check_sigma3,
    'lie_admissible': check_lie_admissible,
}


def run_checks(alg: AlgebraStructure, names: Iterable[str],
               rng: Optional[np.random.Generator] = None,
               trials: int = config.DEFAULT_POWER_TRIALS,
               max_total_degree: int = config.DEFAULT_POWER_DEGREE) -> IdentityReport:
    """
    Run a list of named checks on one algebra.

    Names 'lie', 'comm_assoc' and 'leibniz' apply to the skew and symmetric
    halves of the product.
    """
    report = IdentityReport()
    bracket = product = None
    for name in names:
        if name in IDENTITY_CHECKS:
            report.merge(IDENTITY_CHECKS[name](alg))
        elif name == 'power_associative':
            report.merge(check_power_associative(alg, trials, max_total_degree, rng))
        elif name in ('lie', 'comm_assoc', 'leibniz'):
            if bracket is None:
                halves = alg.as_cochain()
                bracket = halves.skew_part().as_algebra()
                product = halves.symmetric_part().as_algebra()
            if name == 'lie':
                report.merge(check_lie(bracket))
            elif name == 'comm_assoc':
                report.merge(check_comm_assoc(product))
            else:
                report.merge(check_leibniz(bracket, product))
        else:
            raise PreconditionError(f"unknown identity: {name}")
        logger.debug(f"checked {name} on {alg.name or 'algebra'}")
    return report


def find_counterexample(predicate: Callable[[AlgebraStructure], bool],
                        dim: int = 2,
                        values: Sequence[RationalLike] = (0, 1)) -> Optional[AlgebraStructure]:
    """
    First structure tensor, in itertools.product order over `values`, for
    which `predicate` holds.
    """
    entries = [to_rational(v) for v in values]
    for combo in itertools.product(entries, repeat=dim ** 3):
        alg = AlgebraStructure(np.array(combo, dtype=object).reshape((dim,) * 3))
        if predicate(alg):
            return alg
    return None
