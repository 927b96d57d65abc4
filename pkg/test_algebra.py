"""
Tests for structure tensors, cochains and the multilinear kernels.
"""

import numpy as np
import pytest

from core.algebra import (AlgebraStructure, Cochain2, LinearMap, admissibility_pairing,
                          associator, change_basis, direct_sum, element,
                          is_anticommutative, is_commutative, multiply, permute_arguments,
                          power, scale_basis, substitute_left, substitute_right,
                          zero_algebra)
from core.exactnum import random_array, random_invertible
from core.exceptions import DimensionMismatchError, PreconditionError
from core.identities import admissibility_residual


def _random_algebra(rng, n):
    return AlgebraStructure(random_array(rng, (n, n, n)))


def test_from_products_skew_and_symmetric():
    skew = AlgebraStructure.from_products(2, {(0, 1): {1: 1}}, skew=True)
    assert list(skew.product(1, 0)) == [0, -1]
    assert is_anticommutative(skew)
    sym = AlgebraStructure.from_products(2, {(0, 1): {0: 2}}, symmetric=True)
    assert is_commutative(sym)


def test_structure_tensor_is_read_only():
    alg = zero_algebra(2)
    with pytest.raises(ValueError):
        alg.c[0, 0, 0] = 1


def test_multiply_and_dimension_mismatch():
    alg = AlgebraStructure.from_products(2, {(0, 0): {1: 1}})
    assert list(multiply(alg, ['1', '1'], ['2', '0'])) == [0, 2]
    with pytest.raises(DimensionMismatchError):
        multiply(alg, [1, 0, 0], [1, 0])


def test_kernels_match_direct_evaluation():
    rng = np.random.default_rng(3)
    a = _random_algebra(rng, 2)
    x, y, z = (random_array(rng, 2) for _ in range(3))
    left = substitute_left(a.c, a.c)
    right = substitute_right(a.c, a.c)

    def on(tensor, u, v, w):
        return np.tensordot(np.tensordot(np.tensordot(u, tensor, axes=(0, 0)),
                                         v, axes=(0, 0)), w, axes=(0, 0))

    assert np.all(on(left, x, y, z) == multiply(a, multiply(a, x, y), z))
    assert np.all(on(right, x, y, z) == multiply(a, x, multiply(a, y, z)))
    assert np.all(on(left - right, x, y, z) == associator(a, x, y, z))
    swapped = permute_arguments(left, (1, 0, 2))
    assert np.all(on(swapped, x, y, z) == multiply(a, multiply(a, y, x), z))


def test_admissibility_pairing_of_lie_algebra_vanishes():
    sl2 = AlgebraStructure.from_products(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
                                         skew=True)
    assert not np.any(admissibility_pairing(sl2.c, sl2.c) != 0)
    assert not np.any(admissibility_residual(sl2) != 0)


def test_power_requires_positive_exponent():
    alg = AlgebraStructure.from_products(1, {(0, 0): {0: 1}})
    assert list(power(alg, ['2'], 3)) == [8]
    with pytest.raises(PreconditionError):
        power(alg, [1], 0)


def test_change_basis_is_an_isomorphism():
    rng = np.random.default_rng(11)
    alg = _random_algebra(rng, 3)
    p = LinearMap(random_invertible(rng, 3))
    moved = change_basis(alg, p)
    x, y = random_array(rng, 3), random_array(rng, 3)
    # p(x ∗ y) = p(x) · p(y)
    assert np.all(p.apply(multiply(moved, x, y)) == multiply(alg, p.apply(x), p.apply(y)))
    assert change_basis(moved, p.inverse()) == alg


def test_change_basis_rejects_singular_map():
    with pytest.raises(PreconditionError):
        change_basis(zero_algebra(2), LinearMap(np.array([[1, 1], [1, 1]], dtype=object)))


def test_direct_sum_blocks():
    a = AlgebraStructure.from_products(1, {(0, 0): {0: 1}})
    b = AlgebraStructure.from_products(2, {(0, 1): {1: 1}}, skew=True)
    s = direct_sum(a, b)
    assert s.dim == 3
    assert list(multiply(s, element([1, 1, 0]), element([1, 0, 1]))) == [1, 0, 1]


def test_cochain_parts_and_arithmetic():
    phi = Cochain2.from_entries(2, {(0, 1): {0: 2}})
    assert phi.symmetric_part() + phi.skew_part() == phi
    assert phi.skew_part().is_skew()
    assert phi.symmetric_part().is_symmetric()
    assert (phi - phi).is_zero()
    assert (2 * phi).values[0, 1, 0] == 4
    assert list(phi.evaluate([1, 0], [0, 1])) == [2, 0]


def test_linear_map_from_images():
    f = LinearMap.from_images([[0, 1], [1, 0]])
    assert list(f.apply([1, 0])) == [0, 1]
    assert f.compose(f) == LinearMap.identity(2)


def test_scale_basis_rescales_products():
    alg = AlgebraStructure.from_products(2, {(0, 1): {1: 1}}, skew=True)
    scaled = scale_basis(alg, ['2', '1'])
    assert list(scaled.product(0, 1)) == [0, 2]
    assert list(scaled.product(1, 0)) == [0, -2]
