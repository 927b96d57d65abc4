"""
Finite-dimensional algebras given by exact structure constants.

An algebra of dimension n is a tensor ``c`` of shape (n, n, n) with
``e_i · e_j = Σ_k c[i, j, k] e_k``. Bilinear and trilinear maps (cochains)
use the same layout: input indices first, output index last. Elements are
length-n object arrays of Fractions.

The module-level kernels ``substitute_left``, ``substitute_right`` and
``permute_arguments`` express every trilinear formula in the package as a
short sum of tensor contractions.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.exactnum import (ONE, RationalLike, identity, inverse, is_zero,
                           rational_array, to_rational, zeros)
from core.exceptions import DimensionMismatchError, PreconditionError

Element = np.ndarray


def element(coords: Sequence[RationalLike]) -> Element:
    """Coordinate vector of an element in the fixed basis."""
    return rational_array(coords).reshape(-1)


def _frozen(values, ndim: int, what: str) -> np.ndarray:
    array = rational_array(values)
    if array.ndim != ndim or len(set(array.shape)) > 1:
        raise DimensionMismatchError(f"{what} must be a cube of rank {ndim}, "
                                     f"got shape {array.shape}")
    array.setflags(write=False)
    return array


# ---------------------------------------------------------------------------
# Multilinear kernels


def substitute_left(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """(X, Y, Z) ↦ outer(inner(X, Y), Z), as an (n, n, n, n) tensor."""
    return np.tensordot(inner, outer, axes=(2, 0))


def substitute_right(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """(X, Y, Z) ↦ outer(X, inner(Y, Z)), as an (n, n, n, n) tensor."""
    return np.transpose(np.tensordot(outer, inner, axes=(1, 2)), (0, 2, 3, 1))


def permute_arguments(tensor: np.ndarray, order: Tuple[int, ...]) -> np.ndarray:
    """
    Reorder the arguments of a multilinear map.

    ``order`` lists which argument feeds each slot: the result is
    (X_0, X_1, ...) ↦ tensor(X_order[0], X_order[1], ...). The trailing
    output axis is left in place.
    """
    arity = len(order)
    axes = tuple(order.index(slot) for slot in range(arity))
    return np.transpose(tensor, axes + tuple(range(arity, tensor.ndim)))


def admissibility_pairing(phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """
    Trilinear map built from two bilinear maps φ, ψ:

        3φ(ψ(X,Y),Z) − 3φ(X,ψ(Y,Z)) − φ(ψ(X,Z),Y) − φ(ψ(Y,Z),X)
        + φ(ψ(Y,X),Z) + φ(ψ(Z,X),Y)

    With φ = ψ = μ this is the admissibility residual of μ; the degree-2
    coboundary and the deformation composition are built from it.
    """
    left = substitute_left(phi, psi)
    return (3 * left
            - 3 * substitute_right(phi, psi)
            - permute_arguments(left, (0, 2, 1))
            - permute_arguments(left, (1, 2, 0))
            + permute_arguments(left, (1, 0, 2))
            + permute_arguments(left, (2, 0, 1)))


def transform_bilinear(values: np.ndarray, outer: np.ndarray,
                       left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(X, Y) ↦ outer · values(left · X, right · Y) for matrices acting on columns."""
    step = np.tensordot(left, values, axes=(0, 0))            # (i, b, m)
    step = np.transpose(np.tensordot(step, right, axes=(1, 0)), (0, 2, 1))
    return np.tensordot(step, outer, axes=(2, 1))              # (i, j, k)


# ---------------------------------------------------------------------------
# Value types


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    """Structure constants c[i, j, k] of a single (non-symmetric) product."""
    c: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'c', _frozen(self.c, 3, "structure tensor"))

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def zero(cls, dim: int, name: Optional[str] = None) -> 'AlgebraStructure':
        return cls(zeros((dim, dim, dim)), name or f"zero_{dim}")

    @classmethod
    def from_products(cls, dim: int,
                      products: Mapping[Tuple[int, int], Mapping[int, RationalLike]],
                      name: Optional[str] = None,
                      skew: bool = False,
                      symmetric: bool = False) -> 'AlgebraStructure':
        """
        Build a table from its nonzero products.

        Args:
            dim: Dimension
            products: {(i, j): {k: coefficient}} with 0-based indices
            name: Optional label
            skew: Also set e_j·e_i = −e_i·e_j for every listed pair
            symmetric: Also set e_j·e_i = e_i·e_j for every listed pair
        """
        c = zeros((dim, dim, dim))
        for (i, j), out in products.items():
            for k, v in out.items():
                value = to_rational(v)
                c[i, j, k] = value
                if skew and i != j:
                    c[j, i, k] = -value
                if symmetric and i != j:
                    c[j, i, k] = value
        return cls(c, name)

    def with_name(self, name: Optional[str]) -> 'AlgebraStructure':
        return AlgebraStructure(self.c, name)

    def product(self, i: int, j: int) -> Element:
        return self.c[i, j].copy()

    def as_cochain(self) -> 'Cochain2':
        return Cochain2(self.c)

    def is_zero(self) -> bool:
        return is_zero(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraStructure):
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgebraStructure(name={self.name!r}, dim={self.dim})"


class _Multilinear:
    """Shared arithmetic of Cochain2 / Cochain3."""
    ARITY = 0
    values: np.ndarray

    def __init__(self, values):
        self.values = _frozen(values, self.ARITY + 1, type(self).__name__)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @classmethod
    def zero(cls, dim: int):
        return cls(zeros((dim,) * (cls.ARITY + 1)))

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} "
                            f"with {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other):
        self._same(other)
        return type(self)(self.values + other.values)

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.values - other.values)

    def __neg__(self):
        return type(self)(-self.values)

    def __mul__(self, scalar):
        return type(self)(self.values * to_rational(scalar))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return is_zero(self.values)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.values.shape == other.values.shape and \
            bool(np.all(self.values == other.values))

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


class Cochain2(_Multilinear):
    """Bilinear map φ with φ(e_i, e_j) = Σ_k values[i, j, k] e_k."""
    ARITY = 2

    @classmethod
    def from_entries(cls, dim: int,
                     entries: Mapping[Tuple[int, int], Mapping[int, RationalLike]],
                     skew: bool = False) -> 'Cochain2':
        return cls(AlgebraStructure.from_products(dim, entries, skew=skew).c)

    def symmetric_part(self) -> 'Cochain2':
        """φ_s(X, Y) = (φ(X, Y) + φ(Y, X)) / 2."""
        return Cochain2((self.values + np.transpose(self.values, (1, 0, 2))) / 2)

    def skew_part(self) -> 'Cochain2':
        """φ_a(X, Y) = (φ(X, Y) − φ(Y, X)) / 2."""
        return Cochain2((self.values - np.transpose(self.values, (1, 0, 2))) / 2)

    def is_skew(self) -> bool:
        return is_zero(self.values + np.transpose(self.values, (1, 0, 2)))

    def is_symmetric(self) -> bool:
        return is_zero(self.values - np.transpose(self.values, (1, 0, 2)))

    def evaluate(self, x: Element, y: Element) -> Element:
        return np.tensordot(np.tensordot(element(x), self.values, axes=(0, 0)),
                            element(y), axes=(0, 0))

    def as_algebra(self, name: Optional[str] = None) -> AlgebraStructure:
        return AlgebraStructure(self.values, name)


class Cochain3(_Multilinear):
    """Trilinear map with values[i, j, l, k] the e_k-coordinate of ψ(e_i, e_j, e_l)."""
    ARITY = 3

    def first_nonzero(self) -> Optional[Tuple[Tuple[int, int, int], Element]]:
        """Lexicographically first basis triple with a nonzero value."""
        hits = np.argwhere(self.values != 0)
        if hits.size == 0:
            return None
        i, j, l = (int(v) for v in hits[0][:3])
        return (i, j, l), self.values[i, j, l].copy()


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Endomorphism f with f(x) = matrix @ x (column j is f(e_j))."""
    matrix: np.ndarray

    def __post_init__(self):
        m = rational_array(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"linear map must be square, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> 'LinearMap':
        return cls(identity(dim))

    @classmethod
    def zero(cls, dim: int) -> 'LinearMap':
        return cls(zeros((dim, dim)))

    @classmethod
    def from_images(cls, images: Sequence[Sequence[RationalLike]]) -> 'LinearMap':
        """Build f from the list [f(e_0), f(e_1), ...]."""
        return cls(rational_array(images).T)

    def apply(self, x: Element) -> Element:
        return self.matrix @ element(x)

    def compose(self, other: 'LinearMap') -> 'LinearMap':
        """self ∘ other."""
        return LinearMap(self.matrix @ other.matrix)

    def inverse(self) -> 'LinearMap':
        return LinearMap(inverse(self.matrix))

    def __add__(self, other: 'LinearMap') -> 'LinearMap':
        return LinearMap(self.matrix + other.matrix)

    def __sub__(self, other: 'LinearMap') -> 'LinearMap':
        return LinearMap(self.matrix - other.matrix)

    def __mul__(self, scalar) -> 'LinearMap':
        return LinearMap(self.matrix * to_rational(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and \
            bool(np.all(self.matrix == other.matrix))

    __hash__ = None


# ---------------------------------------------------------------------------
# Operations


def _check_element(alg: AlgebraStructure, x) -> Element:
    x = element(x)
    if x.shape[0] != alg.dim:
        raise DimensionMismatchError(
            f"element of length {x.shape[0]} in an algebra of dimension {alg.dim}")
    return x


def multiply(alg: AlgebraStructure, x, y) -> Element:
    """Bilinear extension of the structure constants: x · y."""
    x = _check_element(alg, x)
    y = _check_element(alg, y)
    return np.tensordot(np.tensordot(x, alg.c, axes=(0, 0)), y, axes=(0, 0))


def associator(alg: AlgebraStructure, x, y, z) -> Element:
    """A(x, y, z) = (x·y)·z − x·(y·z)."""
    return multiply(alg, multiply(alg, x, y), z) - multiply(alg, x, multiply(alg, y, z))


def associator_tensor(alg: AlgebraStructure) -> np.ndarray:
    """The associator on all basis triples, shape (n, n, n, n)."""
    return substitute_left(alg.c, alg.c) - substitute_right(alg.c, alg.c)


def power(alg: AlgebraStructure, x, k: int) -> Element:
    """Left power: x¹ = x, x^{i+1} = x · x^i."""
    if k < 1:
        raise PreconditionError("powers start at k = 1 (no unit is assumed)")
    x = _check_element(alg, x)
    result = x
    for _ in range(k - 1):
        result = multiply(alg, x, result)
    return result


def powers(alg: AlgebraStructure, x, k: int) -> Dict[int, Element]:
    """{i: x^i for i = 1..k}."""
    x = _check_element(alg, x)
    out = {1: x}
    for i in range(2, k + 1):
        out[i] = multiply(alg, x, out[i - 1])
    return out


def left_multiplication(alg: AlgebraStructure, x) -> np.ndarray:
    """Matrix of L_x : y ↦ x·y."""
    x = _check_element(alg, x)
    return np.tensordot(x, alg.c, axes=(0, 0)).T


def right_multiplication(alg: AlgebraStructure, x) -> np.ndarray:
    """Matrix of R_x : y ↦ y·x."""
    x = _check_element(alg, x)
    return np.tensordot(alg.c, x, axes=(1, 0)).T


def change_basis(alg: AlgebraStructure, p: LinearMap) -> AlgebraStructure:
    """
    Structure constants of x ∗ y = p⁻¹(p(x) · p(y)), isomorphic to alg via p.

    Raises:
        PreconditionError: if p is singular
    """
    if p.dim != alg.dim:
        raise DimensionMismatchError(f"map of dimension {p.dim} on an algebra "
                                     f"of dimension {alg.dim}")
    p_inv = inverse(p.matrix)
    return AlgebraStructure(transform_bilinear(alg.c, p_inv, p.matrix, p.matrix),
                            alg.name)


def zero_algebra(n: int) -> AlgebraStructure:
    return AlgebraStructure.zero(n)


def direct_sum(a: AlgebraStructure, b: AlgebraStructure,
               name: Optional[str] = None) -> AlgebraStructure:
    """Block-diagonal algebra a ⊕ b (the summands multiply to zero)."""
    n, m = a.dim, b.dim
    c = zeros((n + m,) * 3)
    c[:n, :n, :n] = a.c
    c[n:, n:, n:] = b.c
    return AlgebraStructure(c, name or f"{a.name or 'A'}+{b.name or 'B'}")


def scale_basis(alg: AlgebraStructure, factors: Iterable[RationalLike]) -> AlgebraStructure:
    """Rescale e_i ↦ factors[i] · e_i."""
    return change_basis(alg, LinearMap(np.diag(rational_array(list(factors)))))


def is_commutative(alg: AlgebraStructure) -> bool:
    return is_zero(alg.c - np.transpose(alg.c, (1, 0, 2)))


def is_anticommutative(alg: AlgebraStructure) -> bool:
    return is_zero(alg.c + np.transpose(alg.c, (1, 0, 2)))


def unit_vector(alg: AlgebraStructure, i: int) -> Element:
    v = zeros(alg.dim)
    v[i] = ONE
    return v
