#!/usr/bin/env python3
"""
End-to-end tests for the paalg command line.
Commands are driven through ui.cli.run, which never prints, and through
main for the output paths.
"""

import io
import json
import logging
import sys
from pathlib import Path

import pytest

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from core.data_handler import algebra_from_dict, dumps
from core.exceptions import FormatError
from ui.cli import main, run
from utils.logger import get_logger, setup_logger


def _show(name, *params):
    argv = ['catalog', 'show', name]
    for p in params:
        argv += ['--param', p]
    result = run(argv)
    assert result.ok, result.diagnostics
    return result.payload


def _pipe(payload, *argv):
    return run(list(argv), stdin=io.StringIO(dumps(payload)))


def test_show_then_check_from_stdin():
    result = _pipe(_show('P_3_9'), 'check', '-', '--trials', '5')
    assert result.exit_code == 0
    assert all(result.payload['verdicts'].values())
    assert result.payload['witnesses'] == {}


def test_failed_identity_is_still_a_successful_run():
    result = _pipe(_show('nonflexible_2'), 'check', '-', '--identities', 'flexible,eq6')
    assert result.ok
    assert result.payload['verdicts'] == {'eq6': False, 'flexible': False}
    assert result.payload['witnesses']['flexible']['indices'] == [0, 0, 0]


def test_missing_file_is_an_input_error(tmp_path):
    result = run(['check', str(tmp_path / 'absent.json')])
    assert result.exit_code == 1
    assert result.to_dict()['status'] == 'error'


def test_malformed_json_reports_location(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"dim": 2,\n "products": [}\n')
    result = run(['split', str(path)])
    assert result.exit_code == 1
    assert str(path) in result.diagnostics[0]


def test_float_coefficients_are_rejected():
    data = {'dim': 1, 'products': [{'i': 0, 'j': 0, 'out': [{'k': 0, 'v': 0.5}]}]}
    result = _pipe(data, 'check', '-')
    assert result.exit_code == 1


@pytest.mark.parametrize('index', [0.5, 1.0, '0', True])
def test_non_integer_indices_are_rejected(index):
    data = {'dim': 2, 'products': [{'i': index, 'j': 1, 'out': [{'k': 1, 'v': '1'}]}]}
    with pytest.raises(FormatError, match='malformed entry'):
        algebra_from_dict(data)
    assert _pipe(data, 'check', '-').exit_code == 1


def test_argument_errors():
    assert run(['check', '-', '--no-such-flag']).exit_code == 1
    assert run([]).exit_code == 1
    assert run(['catalog']).exit_code == 1


def test_unknown_fixture_parameter():
    result = run(['catalog', 'show', 'P_3_7', '--param', 'alpha=0'])
    assert result.exit_code == 1
    result = run(['catalog', 'show', 'P_3_7', '--param', 'alpha'])
    assert result.exit_code == 1


def test_nilradical_of_p33_at_zero():
    result = _pipe(_show('P_3_3', 'alpha=0'), 'nilradical', '-')
    assert result.ok
    assert result.payload['nilradical'] == [['1', '0', '0'], ['0', '1', '0']]
    assert result.payload['principal_idempotent'] == ['0', '0', '1']
    assert 'multiplication_algebra' in result.payload


def test_pierce_with_and_without_idempotent():
    alg = _show('P_3_6')
    result = _pipe(alg, 'pierce', '-', '--idempotent', '0,0,1')
    assert result.payload['is_unit']
    result = _pipe(alg, 'pierce', '-')
    assert result.payload['unit'] == ['0', '0', '1']


def test_split_payload():
    result = _pipe(_show('P_3_2'), 'split', '-')
    assert result.payload['lie_center'] == {'ambient_dim': 3, 'basis': [['0', '0', '1']]}


def test_cohomology_degrees():
    alg = _show('P_2_6')
    full = _pipe(alg, 'cohomology', '-')
    assert (full.payload['dim_Z2'], full.payload['dim_B2'], full.payload['dim_H2']) == (2, 2, 0)
    h1 = _pipe(alg, 'cohomology', '-', '--degree', '1')
    assert h1.payload['h1_dims'] == [2, 2, 0]
    h0 = _pipe(_show('comm_2_nil'), 'cohomology', '-', '--degree', '0')
    assert h0.payload['h0_basis']['basis'] == [['0', '1']]


def test_cohomology_rejects_non_admissible_input():
    result = _pipe(_show('assoc_2'), 'cohomology', '-')
    assert result.exit_code == 1


def test_deform_reports_first_failure(tmp_path):
    terms = tmp_path / 'terms.json'
    terms.write_text(json.dumps(
        {'terms': [{'dim': 2, 'cochain': [{'i': 0, 'j': 0, 'out': [{'k': 0, 'v': '1'}]}]}]}))
    result = _pipe(_show('P_2_6'), 'deform', '-', '--terms', str(terms), '--order', '2')
    assert result.ok
    assert result.payload['first_failure'] == 1
    assert result.payload['vanishes'] == {'1': False, '2': True}


def test_products_of_heisenberg_bracket():
    bracket = _show('heisenberg', 'alpha=0', 'beta=0', 'gamma=0')
    result = _pipe(bracket, 'products', '-', '--params', '1,1,1')
    assert result.payload['dim'] == 3
    assert result.payload['associative']


def test_symalg_from_catalog_presentation():
    lie = _show('sym_ex1')
    assert lie['generators'] == ['X', 'Y']
    result = _pipe(lie, 'symalg', '-', '--spectrum', '0,1,0,0,0,0')
    assert result.payload['monomials'] == ['1', 'X', 'Y', 'X^2', 'X*Y', 'Y^2']
    assert result.payload['truncation_is_ideal']
    assert result.payload['spectrum']['eigenvalues'] == ['0', '0', '1', '0', '1', '2']


def test_catalog_audit_export(tmp_path):
    export = tmp_path / 'audit.csv'
    result = run(['catalog', 'audit', 'P_2_6', 'P_3_5', '--export', str(export),
                  '--format', 'CSV'])
    assert result.ok
    assert result.payload['passed']
    assert export.read_text().startswith('fixture,check')


def test_catalog_list():
    result = run(['catalog', 'list'])
    names = [entry['name'] for entry in result.payload]
    assert 'P_3_9' in names and 'sym_ex3' in names


def test_main_writes_out_file(tmp_path, capsys):
    out = tmp_path / 'p26.json'
    assert main(['catalog', 'show', 'P_2_6', '--out', str(out)]) == 0
    assert json.loads(out.read_text())['dim'] == 2
    assert capsys.readouterr().out == ''


def test_main_prints_json_and_errors(capsys):
    assert main(['catalog', 'show', 'P_2_6']) == 0
    assert json.loads(capsys.readouterr().out)['name'] == 'P_2_6'
    assert main(['catalog', 'show', 'nope']) == 1
    error = json.loads(capsys.readouterr().out)
    assert error['status'] == 'error'
    assert error['diagnostics']


def test_main_pretty_output(capsys):
    assert main(['catalog', 'show', 'P_2_6', '--pretty']) == 0
    assert 'P_2_6' in capsys.readouterr().out


def test_logger_setup_replaces_handlers(tmp_path):
    log = tmp_path / "logs" / "paalg.log"
    setup_logger(log_file=log, level=logging.DEBUG)
    logger = setup_logger(log_file=log, level=logging.DEBUG)
    assert len(logger.handlers) == 2
    get_logger("core.probe").debug("probe record")
    for handler in logger.handlers:
        handler.flush()
    assert "paalg.core.probe" in log.read_text()
    setup_logger()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
