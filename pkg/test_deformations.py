"""
Tests for formal deformations, their obstructions and equivalences.
"""

import numpy as np
import pytest

from core.algebra import AlgebraStructure, Cochain2, LinearMap
from core.catalog import AlgebraCatalog
from core.cohomology import delta1
from core.deformations import (FormalDeformation, apply_equivalence, circ, evaluate_at,
                               first_order_space, is_formal_automorphism, obstruction,
                               obstructions, residual_polynomial)
from core.exactnum import random_array
from core.exceptions import DimensionMismatchError, PreconditionError


def _rescaling_term():
    # φ₁(e1, e3) = e3, φ₁(e3, e1) = −e3
    return Cochain2.from_entries(3, {(0, 2): {2: 1}}, skew=True)


def test_p37_deforms_along_its_parameter():
    base = AlgebraCatalog.get('P_3_7', alpha='2')
    d = FormalDeformation(base, (_rescaling_term(),)).truncated(4)
    report = obstructions(d)
    assert report.passed
    assert report.vanishes == [True, True, True, True]
    assert evaluate_at(d, '1/2') == AlgebraCatalog.get('P_3_7', alpha='5/2')


def test_non_cocycle_fails_at_first_order():
    base = AlgebraCatalog.get('P_2_6')
    phi = Cochain2.from_entries(2, {(0, 0): {0: 1}})
    report = obstructions(FormalDeformation(base, (phi,)))
    assert not report.passed
    assert report.first_failure == 1
    assert report.witness is not None
    assert report.to_dict()['vanishes'] == {'1': False}


def test_obstructions_need_a_term():
    with pytest.raises(PreconditionError):
        obstructions(FormalDeformation(AlgebraCatalog.get('P_2_6'), ()))


def test_term_dimension_is_checked():
    with pytest.raises(DimensionMismatchError):
        FormalDeformation(AlgebraCatalog.get('P_2_6'), (Cochain2.zero(3),))


def test_obstructions_match_residual_polynomial():
    rng = np.random.default_rng(13)
    base = AlgebraCatalog.get('P_3_6')
    terms = tuple(Cochain2(random_array(rng, (3, 3, 3))) for _ in range(3))
    d = FormalDeformation(base, terms)
    coefficients = residual_polynomial(d)
    assert len(coefficients) == 7
    assert coefficients[0].is_zero()
    for m in range(1, 4):
        assert obstruction(d, m) * 3 == coefficients[m]


def test_second_order_uses_circ():
    rng = np.random.default_rng(21)
    base = AlgebraStructure.zero(2)
    phi = Cochain2(random_array(rng, (2, 2, 2)))
    d = FormalDeformation(base, (phi, Cochain2.zero(2)))
    # δ² vanishes on the zero algebra, so the order-2 obstruction is φ∘φ
    assert obstruction(d, 2) == circ(phi, phi)


def test_equivalence_by_coboundary_removes_first_order_term():
    rng = np.random.default_rng(4)
    base = AlgebraCatalog.get('P_3_6')
    g = LinearMap(random_array(rng, (3, 3)))
    d = FormalDeformation(base, (delta1(base, g),))
    moved = apply_equivalence(d, [LinearMap.identity(3), g * -1])
    assert moved.base == base
    assert moved.term(1).is_zero()


def test_equivalent_deformations_keep_vanishing_obstructions():
    base = AlgebraCatalog.get('P_3_7', alpha='2')
    d = FormalDeformation(base, (_rescaling_term(), Cochain2.zero(3)))
    shift = LinearMap(np.diag(np.array([0, 1, 0], dtype=object)))
    moved = apply_equivalence(d, [LinearMap.identity(3), shift])
    assert obstructions(moved).passed


def test_rescaling_is_a_formal_automorphism():
    base = AlgebraCatalog.get('P_3_7', alpha='2')
    scale = LinearMap(np.diag(np.array([0, 0, 1], dtype=object)))
    assert is_formal_automorphism(base, [LinearMap.identity(3), scale], order=3)


def test_first_order_space_is_z2():
    assert first_order_space(AlgebraCatalog.get('P_2_6')).dim == 2
