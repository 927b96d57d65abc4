"""
Tests for identity checks and the Σ₃ action on associators.
"""

import numpy as np
import pytest

from core.algebra import AlgebraStructure
from core.catalog import AlgebraCatalog
from core.exactnum import random_array
from core.exceptions import PreconditionError
from core.identities import (EQ6_VECTOR, FLEXIBLE_VECTOR, SIGMA3_VECTOR,
                             GroupAlgebraVector, annihilator_space, check_admissible,
                             check_eq6, check_flexible, check_lie, check_lie_admissible,
                             check_power_associative, find_counterexample,
                             identity_constraint_matrix, run_checks, sigma3_annihilates)

ADMISSIBLE_FIXTURES = ['P_3_2', 'P_3_4', 'P_3_5', 'P_3_6', 'P_3_8', 'P_3_9',
                       'remark_nil', 'P_2_6', 'comm_2_unit', 'comm_2_nil']


def test_commutative_non_associative_fails_admissibility_with_witness():
    # e1e1 = e2, e1e2 = e2e1 = e1, e2e2 = 0
    alg = AlgebraStructure.from_products(2, {(0, 0): {1: 1}, (0, 1): {0: 1}},
                                         symmetric=True)
    report = check_admissible(alg)
    assert not report['admissible']
    witness = report.witnesses['admissible']
    assert witness.indices == (0, 0, 1)
    assert [str(v) for v in witness.residual] == ['0', '-4']
    # commutative products satisfy both associator relations
    assert check_flexible(alg)['flexible']
    assert check_eq6(alg)['eq6']


@pytest.mark.parametrize('name', ADMISSIBLE_FIXTURES)
def test_fixtures_satisfy_every_identity(name):
    alg = AlgebraCatalog.get(name)
    report = run_checks(alg, ['admissible', 'flexible', 'eq6', 'sigma3', 'lie_admissible',
                              'lie', 'comm_assoc', 'leibniz'])
    assert report.passed, report.to_dict()


@pytest.mark.parametrize('name', ['P_3_1', 'P_3_3', 'P_3_7'])
@pytest.mark.parametrize('value', ['-1', '1/2', '3'])
def test_parametrized_fixtures_are_admissible(name, value):
    param = AlgebraCatalog.FIXTURES[name]['parameters'][0]
    alg = AlgebraCatalog.get(name, **{param: value})
    assert run_checks(alg, ['admissible', 'flexible', 'eq6', 'sigma3']).passed


def test_power_associativity_on_fixture():
    rng = np.random.default_rng(5)
    report = check_power_associative(AlgebraCatalog.get('P_3_6'), trials=20, rng=rng)
    assert report['power_associative']
    assert 'power_associative' not in report.notes


def test_power_associativity_note_for_non_admissible_input():
    report = check_power_associative(AlgebraCatalog.get('nonflexible_2'), trials=2,
                                     max_total_degree=4)
    assert report.notes['power_associative'].startswith('non-applicable')


def test_nonflexible_example_fails_all_associator_relations():
    alg = AlgebraCatalog.get('nonflexible_2')
    report = run_checks(alg, ['admissible', 'flexible', 'eq6', 'sigma3'])
    assert report.verdicts == {'admissible': False, 'flexible': False,
                               'eq6': False, 'sigma3': False}
    assert report.witnesses['flexible'].indices == (0, 0, 0)


def test_associative_example_is_not_admissible():
    alg = AlgebraCatalog.get('assoc_2')
    report = run_checks(alg, ['admissible', 'flexible', 'eq6', 'sigma3'])
    assert not report['admissible']
    assert report['flexible'] and report['eq6'] and report['sigma3']


def test_check_lie_reports_skew_failure():
    report = check_lie(AlgebraStructure.from_products(2, {(0, 0): {0: 1}}))
    assert not report['lie']
    assert report.witnesses['lie'].indices == (0, 0)


def test_unknown_identity_is_a_precondition_error():
    with pytest.raises(PreconditionError):
        run_checks(AlgebraCatalog.get('P_2_6'), ['commutativity'])


@pytest.mark.parametrize('name', ADMISSIBLE_FIXTURES)
def test_sigma3_vectors_annihilate_admissible_associators(name):
    alg = AlgebraCatalog.get(name)
    assert sigma3_annihilates(alg, FLEXIBLE_VECTOR)
    assert sigma3_annihilates(alg, EQ6_VECTOR)
    assert sigma3_annihilates(alg, SIGMA3_VECTOR)


def test_sigma3_annihilates_rejects_zero_vector():
    with pytest.raises(PreconditionError):
        sigma3_annihilates(AlgebraCatalog.get('P_2_6'), GroupAlgebraVector.of())


@pytest.mark.parametrize('n', [2, 3])
def test_flexible_and_eq6_cut_out_the_sigma3_relation(n):
    both = annihilator_space([FLEXIBLE_VECTOR, EQ6_VECTOR], n)
    single = annihilator_space([SIGMA3_VECTOR], n)
    assert both == single


def test_find_counterexample_returns_first_match():
    found = find_counterexample(lambda a: not check_flexible(a)['flexible'])
    assert found is not None
    assert not check_flexible(found)['flexible']
    assert find_counterexample(lambda a: False, dim=1) is None


def test_lie_admissibility_failure():
    # the commutator is twice [e1,e2] = e1, [e2,e3] = e2, [e3,e1] = e3, which breaks Jacobi
    alg = AlgebraStructure.from_products(3, {(0, 1): {0: 1}, (1, 2): {1: 1}, (2, 0): {2: 1}},
                                         skew=True)
    report = check_lie_admissible(alg)
    assert not report['lie_admissible']
    assert report.witnesses['lie_admissible'].indices == (0, 1, 2)


def test_constraint_matrix_applies_the_group_algebra_vector():
    rng = np.random.default_rng(6)
    tensor = random_array(rng, (2, 2, 2, 2))
    for v in (FLEXIBLE_VECTOR, EQ6_VECTOR, SIGMA3_VECTOR):
        matrix = identity_constraint_matrix(v, 2)
        assert matrix.shape == (16, 16)
        assert np.all(matrix @ tensor.reshape(-1) == v.apply(tensor).reshape(-1))
