"""
Tests for exact rational arithmetic and subspaces.
"""

from fractions import Fraction

import numpy as np
import pytest

from core.exactnum import (Subspace, format_rational, inverse, nullspace, rank,
                           random_invertible, rational_array, rref, solve_unique,
                           subspace_ops, to_rational)
from core.exceptions import FormatError, PreconditionError


def test_to_rational_accepts_exact_inputs():
    assert to_rational('3/6') == Fraction(1, 2)
    assert to_rational(' -4 ') == Fraction(-4)
    assert to_rational(7) == Fraction(7)
    assert to_rational(Fraction(2, 3)) == Fraction(2, 3)


@pytest.mark.parametrize('bad', [0.5, '1/0', 'x'])
def test_to_rational_rejects_inexact_or_malformed(bad):
    with pytest.raises(FormatError):
        to_rational(bad)


def test_format_rational_is_canonical():
    assert format_rational(Fraction(4, 2)) == '2'
    assert format_rational('-6/4') == '-3/2'
    assert format_rational(0) == '0'


def test_rref_and_rank():
    m = rational_array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = rref(m)
    assert pivots == (0, 1)
    assert rank(m) == 2
    assert list(reduced[0]) == [1, 0, 1]
    assert list(reduced[1]) == [0, 1, 1]


def test_nullspace_is_the_kernel():
    m = rational_array([[1, 2, 3], [2, 4, 6]])
    kernel = nullspace(m)
    assert kernel.dim == 2
    for v in kernel.vectors():
        assert not np.any(m @ v != 0)


def test_inverse_and_singular_matrix():
    m = rational_array([[2, 1], [1, 1]])
    inv = inverse(m)
    assert not np.any(m @ inv - rational_array([[1, 0], [0, 1]]) != 0)
    with pytest.raises(PreconditionError):
        inverse(rational_array([[1, 2], [2, 4]]))


def test_solve_unique_rejects_families_and_inconsistency():
    m = rational_array([[1, 1], [1, -1]])
    assert list(solve_unique(m, ['3', '1'])) == [2, 1]
    with pytest.raises(PreconditionError):
        solve_unique(rational_array([[1, 1], [2, 2]]), [1, 2])
    with pytest.raises(PreconditionError):
        solve_unique(rational_array([[1, 1], [1, 1]]), [1, 2])


def test_random_invertible_has_full_rank():
    rng = np.random.default_rng(7)
    for n in (1, 2, 4):
        assert rank(random_invertible(rng, n)) == n


def test_subspace_equality_is_canonical():
    a = Subspace.span([[1, 1, 0], [0, 1, 0]], 3)
    b = Subspace.span([[1, 0, 0], [0, 2, 0]], 3)
    assert a == b
    assert a.to_rows() == [['1', '0', '0'], ['0', '1', '0']]


def test_subspace_sum_intersection_and_containment():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert subspace_ops(a, b, 'sum').is_whole()
    meet = subspace_ops(a, b, 'intersection')
    assert meet == Subspace.span([[0, 1, 0]], 3)
    assert subspace_ops(a, meet, 'contains')
    assert not a.contains([0, 0, 1])
    assert list(a.coordinates(['2', '3', '0'])) == [2, 3]
