"""
Exact rational arithmetic and dense exact linear algebra.

Scalars are ``fractions.Fraction``. Matrices, vectors and tensors are numpy
arrays with ``dtype=object`` holding Fractions, so every numpy operation on
them (``tensordot``, ``transpose``, ``@``) stays exact. Elimination runs
through sympy's ``DomainMatrix`` over ``QQ``.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import QQ, Rational as SympyRational
from sympy.polys.matrices import DomainMatrix

import config
from core.exceptions import DimensionMismatchError, FormatError, PreconditionError

Rational = Fraction
Matrix = np.ndarray
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert an integer, Fraction or "p/q" string into a Fraction.

    Floats are rejected: nothing in the library is allowed to round.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"not a rational number: {value!r}") from e
    if isinstance(value, SympyRational):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator') \
            and not isinstance(value, float):
        # gmpy mpq and domain elements
        return Fraction(int(value.numerator), int(value.denominator))
    raise FormatError(f"not an exact rational: {value!r}")


def format_rational(value: RationalLike) -> str:
    """Canonical string form: "p/q" in lowest terms, or "p" when q = 1."""
    q = to_rational(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_array(values, shape: Tuple[int, ...] = None) -> np.ndarray:
    """Build an object array of Fractions from nested sequences."""
    raw = np.asarray(values, dtype=object)
    out = np.empty(raw.shape, dtype=object)
    for index, item in np.ndenumerate(raw):
        out[index] = to_rational(item)
    if shape is not None:
        out = out.reshape(shape)
    return out


def zeros(shape) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = ONE
    return m


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(array: np.ndarray) -> bool:
    """True iff every entry is exactly zero."""
    return not np.any(np.asarray(array, dtype=object) != 0)


def random_rational(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    """Single-digit random rational."""
    while True:
        num = int(rng.integers(-config.RANDOM_NUMERATOR_RANGE,
                               config.RANDOM_NUMERATOR_RANGE + 1))
        den = int(rng.integers(1, config.RANDOM_DENOMINATOR_RANGE + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_array(rng: np.random.Generator, shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for index in np.ndindex(*out.shape):
        out[index] = random_rational(rng)
    return out


def random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random invertible n×n rational matrix (rejection sampling)."""
    while True:
        m = random_array(rng, (n, n))
        if rank(m) == n:
            return m


def _to_domain(m: Matrix) -> DomainMatrix:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {m.shape}")
    rows = [[QQ(int(f.numerator), int(f.denominator)) for f in map(to_rational, row)]
            for row in m]
    return DomainMatrix(rows, m.shape, QQ)


def _from_domain(dm: DomainMatrix) -> np.ndarray:
    rows, cols = dm.shape
    out = zeros((rows, cols))
    for i, row in enumerate(dm.to_list()):
        for j, q in enumerate(row):
            out[i, j] = Fraction(int(q.numerator), int(q.denominator))
    return out


def rref(m: Matrix) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """
    Reduced row echelon form over QQ.

    Returns:
        (echelon matrix with the same shape, pivot column indices)
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return zeros(m.shape), ()
    reduced, pivots = _to_domain(m).rref()
    return _from_domain(reduced), tuple(int(p) for p in pivots)


def rank(m: Matrix) -> int:
    """Exact rank over QQ."""
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return int(_to_domain(m).rank())


def nullspace(m: Matrix) -> 'Subspace':
    """Kernel {x : m x = 0} as a canonical Subspace of QQ^cols."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.whole(cols)
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = zeros(cols)
        v[free] = ONE
        for row, pivot in enumerate(pivots):
            v[pivot] = -reduced[row, free]
        vectors.append(v)
    return Subspace.span(vectors, cols)


def inverse(m: Matrix) -> np.ndarray:
    """Exact inverse; raises PreconditionError on singular input."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"cannot invert a matrix of shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        return zeros((0, 0))
    if rank(m) < n:
        raise PreconditionError("matrix is singular")
    return _from_domain(_to_domain(m).inv())


def solve_unique(m: Matrix, b: Sequence) -> np.ndarray:
    """
    Solve m x = b exactly.

    Raises:
        PreconditionError: if the system is inconsistent or x is not unique
    """
    m = np.asarray(m, dtype=object)
    b = rational_array(b).reshape(-1, 1)
    if b.shape[0] != m.shape[0]:
        raise DimensionMismatchError("right-hand side does not match the matrix")
    cols = m.shape[1]
    reduced, pivots = rref(np.hstack([m, b]))
    if cols in pivots:
        raise PreconditionError("linear system is inconsistent")
    if len(pivots) < cols:
        raise PreconditionError(
            f"linear system has a {cols - len(pivots)}-dimensional solution family")
    x = zeros(cols)
    for row, pivot in enumerate(pivots):
        x[pivot] = reduced[row, cols]
    return x


@dataclass(frozen=True)
class Subspace:
    """
    Subspace of QQ^ambient_dim held by its reduced echelon basis.

    Equal subspaces have identical ``basis`` tuples, so ``==`` is subspace
    equality.
    """
    ambient_dim: int
    basis: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> 'Subspace':
        rows = [rational_array(v).reshape(-1) for v in vectors]
        for row in rows:
            if row.shape[0] != ambient_dim:
                raise DimensionMismatchError(
                    f"vector of length {row.shape[0]} in QQ^{ambient_dim}")
        if not rows:
            return cls.zero(ambient_dim)
        reduced, pivots = rref(np.vstack(rows))
        basis = tuple(tuple(reduced[i]) for i in range(len(pivots)))
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, ())

    @classmethod
    def whole(cls, ambient_dim: int) -> 'Subspace':
        eye = identity(ambient_dim)
        return cls(ambient_dim, tuple(tuple(row) for row in eye))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_whole(self) -> bool:
        return self.dim == self.ambient_dim

    def as_matrix(self) -> np.ndarray:
        """Basis vectors as the rows of a (dim × ambient_dim) matrix."""
        if not self.basis:
            return zeros((0, self.ambient_dim))
        return np.array(self.basis, dtype=object)

    def vectors(self) -> List[np.ndarray]:
        return [np.array(row, dtype=object) for row in self.basis]

    def _check(self, other: 'Subspace'):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(
                f"subspaces of QQ^{self.ambient_dim} and QQ^{other.ambient_dim}")

    def contains(self, vector) -> bool:
        v = rational_array(vector).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {v.shape[0]} in QQ^{self.ambient_dim}")
        if is_zero(v):
            return True
        return rank(np.vstack([self.as_matrix(), v])) == self.dim

    def contains_subspace(self, other: 'Subspace') -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other: 'Subspace') -> 'Subspace':
        """Intersection via the nullspace of the stacked constraint [Aᵀ | −Bᵀ]."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        a = self.as_matrix()
        b = other.as_matrix()
        kernel = nullspace(np.hstack([a.T, -b.T]))
        vectors = [np.array(coeffs[:self.dim], dtype=object) @ a
                   for coeffs in kernel.basis]
        return Subspace.span(vectors, self.ambient_dim)

    def coordinates(self, vector) -> np.ndarray:
        """Coordinates of a member vector with respect to the echelon basis."""
        if not self.contains(vector):
            raise PreconditionError("vector is not in the subspace")
        if self.dim == 0:
            return zeros(0)
        return solve_unique(self.as_matrix().T, rational_array(vector).reshape(-1))

    def to_rows(self) -> List[List[str]]:
        return [[format_rational(x) for x in row] for row in self.basis]


def subspace_ops(a: Subspace, b: Subspace, op: str = 'sum') -> Union[Subspace, bool]:
    """
    Combine two subspaces of the same ambient space.

    Args:
        a: First subspace
        b: Second subspace
        op: 'sum', 'intersection', or 'contains' (is b contained in a)

    Returns:
        Canonical Subspace for 'sum'/'intersection', bool for 'contains'
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces of QQ^{a.ambient_dim} and QQ^{b.ambient_dim}")
    if op == 'sum':
        return a + b
    if op == 'intersection':
        return a.intersect(b)
    if op == 'contains':
        return a.contains_subspace(b)
    raise ValueError(f"unknown subspace operation: {op}")
