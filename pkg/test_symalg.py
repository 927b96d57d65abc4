"""
Tests for truncated symmetric algebras and biderivation extensions.
"""

import pytest

from core.algebra import AlgebraStructure, element
from core.exceptions import PreconditionError
from core.identities import check_admissible
from core.symalg import (RIGID_SIX_COCYCLE, TORUS_COCYCLE, LiePresentation, MonomialBasis,
                         ad_spectrum, biderivation_extend, lichnerowicz_residual,
                         preserves_truncation, rigid_six, symmetric_algebra, torus_rank2,
                         truncation_is_ideal, two_dim_nonabelian)


@pytest.fixture(scope='module')
def sym_ex1():
    return symmetric_algebra(two_dim_nonabelian(), truncation=2)


def test_monomial_order_and_labels(sym_ex1):
    assert sym_ex1.dim == 6
    assert sym_ex1.basis.labels() == ['1', 'X', 'Y', 'X^2', 'X*Y', 'Y^2']
    assert [sym_ex1.basis.degree(i) for i in range(6)] == [0, 1, 1, 2, 2, 2]


def test_monomial_count_is_binomial():
    assert len(MonomialBasis.build(('a', 'b', 'c'), 3)) == 20


def test_small_symmetric_algebra_is_a_poisson_pair(sym_ex1):
    assert sym_ex1.pair.validate().passed
    assert check_admissible(sym_ex1.to_algebra())['admissible']


def test_bracket_is_the_linear_poisson_bracket(sym_ex1):
    x, y, xy = (sym_ex1.basis.index(e) for e in [(1, 0), (0, 1), (1, 1)])
    assert sym_ex1.bracket_table[(x, y)] == {y: 1}
    # {X, XY} = X·{X, Y} = XY
    assert sym_ex1.bracket_table[(x, xy)] == {xy: 1}
    assert (y, y) not in sym_ex1.bracket_table


def test_ad_spectrum_counts_y_degree(sym_ex1):
    x = element([0, 1, 0, 0, 0, 0])
    spectrum = ad_spectrum(sym_ex1.pair, x)
    assert spectrum.diagonal
    assert [str(v) for v in spectrum.eigenvalues] == ['0', '0', '1', '0', '1', '2']
    assert [str(v) for v in spectrum.multiset()] == ['0', '0', '0', '1', '1', '2']


def test_ad_spectrum_reports_off_diagonal_entry(sym_ex1):
    spectrum = ad_spectrum(sym_ex1.pair, element([0, 0, 1, 0, 0, 0]))
    assert not spectrum.diagonal
    assert spectrum.witness is not None
    assert spectrum.to_dict()['eigenvalues'] == []


def test_truncation_is_ideal_for_linear_bracket(sym_ex1):
    assert truncation_is_ideal(sym_ex1)


def test_truncation_below_one_is_rejected():
    with pytest.raises(PreconditionError):
        symmetric_algebra(two_dim_nonabelian(), truncation=0)


def test_presentation_requires_lie_bracket():
    with pytest.raises(PreconditionError):
        LiePresentation.from_brackets(('a', 'b'), {(0, 0): {1: 1}})
    with pytest.raises(PreconditionError):
        LiePresentation(AlgebraStructure.zero(2), ('a',))


def test_extend_rejects_diagonal_value(sym_ex1):
    with pytest.raises(PreconditionError):
        biderivation_extend(sym_ex1, {(0, 0): 'X'})
    with pytest.raises(PreconditionError):
        biderivation_extend(sym_ex1, {(0, 1): 'X', (1, 0): 'X'})


def test_extension_is_a_skew_biderivation(sym_ex1):
    phi = biderivation_extend(sym_ex1, {(0, 1): 'Y**2'})
    assert phi.is_skew()
    x, y, xy = (sym_ex1.basis.index(e) for e in [(1, 0), (0, 1), (1, 1)])
    y2 = sym_ex1.basis.index((0, 2))
    assert phi.values[x, y, y2] == 1
    # φ(X, XY) = X·φ(X, Y) = XY² is cut at degree 2
    assert not any(phi.values[x, xy])


def test_rigid_six_cocycle_extension_is_closed():
    sym = symmetric_algebra(rigid_six(), truncation=2)
    assert sym.dim == 28
    assert preserves_truncation(RIGID_SIX_COCYCLE, sym)
    phi = biderivation_extend(sym, RIGID_SIX_COCYCLE)
    assert lichnerowicz_residual(sym, phi) == {}


def test_rigid_six_non_cocycle_has_residual():
    sym = symmetric_algebra(rigid_six(), truncation=2)
    # on (X, Y1, Y3) only [Y3, φ(X, Y1)] = −2·Y2·Y5 survives
    phi = biderivation_extend(sym, {(0, 1): 'Y2**2'})
    residual = lichnerowicz_residual(sym, phi, max_total_degree=3)
    x, y1, y3 = (sym.basis.index(e) for e in [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0),
                                              (0, 0, 0, 1, 0, 0)])
    y2y5 = sym.basis.index((0, 0, 1, 0, 0, 1))
    assert set(residual[(x, y1, y3)]) == {y2y5}


def test_torus_cocycle_does_not_preserve_truncation():
    sym = symmetric_algebra(torus_rank2(), truncation=2)
    assert not preserves_truncation(TORUS_COCYCLE, sym)
    phi = biderivation_extend(sym, TORUS_COCYCLE)
    assert lichnerowicz_residual(sym, phi, max_total_degree=3) == {}
