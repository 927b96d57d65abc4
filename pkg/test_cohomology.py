"""
Tests for the coboundary operators, H⁰/H¹/H² and the classical operator
decomposition of δ².
"""

import numpy as np
import pytest

from core.algebra import AlgebraStructure, Cochain2, Cochain3, LinearMap
from core.catalog import AlgebraCatalog, random_admissible
from core.cohomology import (DECOMPOSITION_COEFFICIENTS, CohomologyCalculator,
                             antisymmetrize3, chevalley, classical_operators,
                             cocycle_basis, cocycle_criteria, cohomology_report, delta0,
                             delta1, delta1_matrix, delta2, delta2_matrix,
                             derivation_spaces, first_order_residual, flatten_cochain2,
                             flatten_cochain3, harrison, harrison_projection,
                             is_biderivation, lichnerowicz, pin_decomposition_coefficients,
                             unflatten_cochain2, unflatten_cochain3)
from core.deformations import circ
from core.exactnum import Subspace, is_zero, random_array
from core.exceptions import DimensionMismatchError, PreconditionError
from core.structure import split

COMPLEX_FIXTURES = ['P_3_2', 'P_3_4', 'P_3_6', 'P_3_9', 'remark_nil', 'P_2_6',
                    'comm_2_unit', 'comm_2_nil']


def _random_cochain(rng, n):
    return Cochain2(random_array(rng, (n, n, n)))


def test_two_dim_nonabelian_is_rigid():
    report = cohomology_report(AlgebraCatalog.get('P_2_6'))
    assert (report.dim_Z2, report.dim_B2, report.dim_H2) == (2, 2, 0)


@pytest.mark.parametrize('n', [1, 2])
def test_zero_algebra_has_full_h2(n):
    report = cohomology_report(AlgebraStructure.zero(n))
    assert report.dim_H2 == n ** 3
    assert report.dim_B2 == 0
    assert report.h1_dims == (n * n, 0, n * n)


@pytest.mark.parametrize('name', COMPLEX_FIXTURES)
def test_delta2_after_delta1_vanishes(name):
    alg = AlgebraCatalog.get(name)
    assert is_zero(delta2_matrix(alg) @ delta1_matrix(alg))


def test_delta2_after_delta1_vanishes_on_random_algebras():
    rng = np.random.default_rng(2024)
    for dim in (2, 3):
        alg = random_admissible(rng, dim)
        assert is_zero(delta2_matrix(alg) @ delta1_matrix(alg))


def test_matrices_agree_with_direct_evaluation():
    rng = np.random.default_rng(9)
    alg = AlgebraCatalog.get('P_3_6')
    f = LinearMap(random_array(rng, (3, 3)))
    phi = _random_cochain(rng, 3)
    assert np.all(delta1_matrix(alg) @ f.matrix.reshape(-1)
                  == flatten_cochain2(delta1(alg, f).values))
    assert np.all(delta2_matrix(alg) @ flatten_cochain2(phi.values)
                  == flatten_cochain3(delta2(alg, phi).values))


def test_flattening_round_trip():
    rng = np.random.default_rng(1)
    phi = _random_cochain(rng, 2)
    assert unflatten_cochain2(flatten_cochain2(phi.values), 2) == phi
    psi = delta2(AlgebraCatalog.get('P_2_6'), phi)
    assert unflatten_cochain3(flatten_cochain3(psi.values), 2) == psi


def test_delta2_is_the_linearized_admissibility_residual():
    rng = np.random.default_rng(77)
    for n in (2, 3):
        for _ in range(5):
            mu = AlgebraStructure(random_array(rng, (n, n, n)))
            phi = _random_cochain(rng, n)
            assert first_order_residual(mu, phi) == delta2(mu, phi)
            assert delta2(mu, phi) == 3 * (circ(mu.as_cochain(), phi) + circ(phi, mu.as_cochain()))


def test_delta_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        delta2(AlgebraCatalog.get('P_2_6'), Cochain2.zero(3))


def test_h0_left_and_two_sided():
    alg = AlgebraCatalog.get('P_3_3', alpha='0')
    assert delta0(alg) == Subspace.zero(3)
    nil = AlgebraCatalog.get('comm_2_nil')
    assert delta0(nil) == Subspace.span([[0, 1]], 2)
    assert delta0(nil, two_sided=True) == Subspace.span([[0, 1]], 2)
    assert delta0(AlgebraCatalog.get('P_3_5')) == Subspace.span([[0, 0, 1]], 3)
    assert delta0(AlgebraCatalog.get('P_3_6')) == Subspace.zero(3)


def test_delta1_of_identity_is_the_product():
    alg = AlgebraCatalog.get('P_3_6')
    assert delta1(alg, LinearMap.identity(3)) == alg.as_cochain()


def test_h1_of_two_dim_nonabelian():
    spaces = derivation_spaces(AlgebraCatalog.get('P_2_6'))
    assert spaces.derivations.dim == 2
    assert spaces.inner.dim == 2
    report = cohomology_report(AlgebraCatalog.get('P_2_6'))
    assert report.h1_dims == (2, 2, 0)
    assert report.inner_derivations_dim == 2


@pytest.mark.parametrize('name', ['P_3_9', 'sl2'])
def test_every_derivation_of_sl2_is_inner(name):
    alg = AlgebraCatalog.get(name)
    assert derivation_spaces(alg).h1_dims == (3, 3, 0)
    assert cohomology_report(alg).h1_dims == (3, 3, 0)


@pytest.mark.parametrize('name', COMPLEX_FIXTURES)
def test_derivations_are_common_derivations_of_bracket_and_product(name):
    spaces = derivation_spaces(AlgebraCatalog.get(name))
    assert spaces.splits
    assert spaces.derivations.contains_subspace(spaces.inner)


def test_derivations_split_on_random_algebras():
    rng = np.random.default_rng(11)
    for dim in (2, 3):
        spaces = derivation_spaces(random_admissible(rng, dim))
        assert spaces.splits
        z1, b1, h1 = spaces.h1_dims
        assert h1 == z1 - b1 >= 0


def test_report_includes_bases_on_request():
    report = cohomology_report(AlgebraCatalog.get('P_2_6'), include_basis=True)
    data = report.to_dict(include_basis=True)
    assert len(data['z2_basis']) == 2
    assert len(data['b2_basis']) == 2
    assert 'z2_basis' not in report.to_dict()


def test_calculator_requires_admissible_algebra():
    with pytest.raises(PreconditionError):
        CohomologyCalculator(AlgebraCatalog.get('nonflexible_2'))


def test_decomposition_coefficients_are_pinned_uniquely():
    for seed in range(5):
        rng = np.random.default_rng(seed)
        mu = AlgebraStructure(random_array(rng, (3, 3, 3)))
        phis = [_random_cochain(rng, 3) for _ in range(2)]
        assert pin_decomposition_coefficients(mu, phis) == DECOMPOSITION_COEFFICIENTS


def test_recombined_operators_reproduce_delta2():
    rng = np.random.default_rng(31)
    alg = AlgebraCatalog.get('P_3_6')
    phi = _random_cochain(rng, 3)
    ops = classical_operators(split(alg), phi)
    assert ops.recombine() == delta2(alg, phi)


@pytest.mark.parametrize('name', ['P_2_6', 'P_3_4', 'P_3_6', 'P_3_9'])
def test_cocycles_satisfy_chevalley_and_harrison_conditions(name):
    alg = AlgebraCatalog.get(name)
    for phi in cocycle_basis(alg):
        assert cocycle_criteria(alg, phi) == {'chevalley': True, 'harrison': True,
                                              'mixed': True}


def test_lichnerowicz_relation_on_lie_algebra():
    alg = AlgebraCatalog.get('P_3_9')
    pair = split(alg)
    rng = np.random.default_rng(8)
    phi = _random_cochain(rng, 3).skew_part()
    assert is_biderivation(pair, phi)
    assert delta2(alg, phi) == -2 * lichnerowicz(pair, phi)


def test_lichnerowicz_rejects_non_biderivation():
    pair = split(AlgebraCatalog.get('P_3_6'))
    phi = Cochain2.from_entries(3, {(0, 0): {0: 1}})
    assert not is_biderivation(pair, phi)
    with pytest.raises(PreconditionError):
        lichnerowicz(pair, phi)


def test_alternating_sum_of_delta2_is_twelve_chevalley():
    rng = np.random.default_rng(17)
    for n in (2, 3):
        mu = AlgebraStructure(random_array(rng, (n, n, n)))
        phi = _random_cochain(rng, n)
        bracket = split(mu, force=True).bracket
        assert np.all(antisymmetrize3(delta2(mu, phi).values)
                      == 12 * chevalley(bracket.c, phi.skew_part().values))


def test_harrison_combination_of_delta2_on_commutative_input():
    rng = np.random.default_rng(19)
    c = random_array(rng, (3, 3, 3))
    mu = AlgebraStructure((c + np.transpose(c, (1, 0, 2))) / 2)
    phi = _random_cochain(rng, 3).symmetric_part()
    # δ²φ = 4·δ_Hφ here, and the combination triples a Harrison coboundary
    assert delta2(mu, phi) == 4 * Cochain3(harrison(mu.c, phi.values))
    assert np.all(harrison_projection(delta2(mu, phi).values)
                  == 12 * harrison(mu.c, phi.values))
