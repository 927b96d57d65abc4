"""
Command-line surface: one subcommand per library operation, JSON in and out.

Successful commands print their payload; failures print
{"status": "error", "diagnostics": [...]} and exit nonzero (1 for input and
precondition errors, 2 for internal invariant violations).
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, List, Optional, TextIO

import numpy as np

import config
from core import cohomology as coh
from core import deformations, identities, structure, symalg
from core.catalog import AlgebraCatalog, audit_all
from core.data_handler import (DataHandler, algebra_from_dict, algebra_to_dict,
                               cochains_from_json, dumps, element_to_list,
                               load_algebra, load_json, parse_element,
                               parse_params, subspace_to_dict)
from core.exceptions import AlgebraError, InvariantViolation
from ui.tables import render
from utils.logger import get_logger, setup_logger

logger = get_logger('cli')

COMMANDS = ('check', 'split', 'pierce', 'nilradical', 'cohomology', 'products',
            'deform', 'symalg', 'catalog')


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = 0
    out: Optional[str] = None
    pretty: bool = False

    @property
    def ok(self) -> bool:
        return self.status == 'ok'

    def to_dict(self) -> dict:
        return {'status': self.status, 'payload': self.payload,
                'diagnostics': list(self.diagnostics)}


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help="write the JSON payload to this file")
    common.add_argument('--seed', type=int, default=config.DEFAULT_SEED,
                        help="seed for randomized checks")
    common.add_argument('--pretty', action='store_true', help="render tables instead of JSON")
    common.add_argument('--verbose', action='store_true', help="debug logging on stderr")

    parser = _Parser(prog='paalg', description=config.APP_DESCRIPTION)
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    p = sub.add_parser('check', parents=[common], help="identity verdicts with witnesses")
    p.add_argument('algebra')
    p.add_argument('--identities', default=','.join(config.DEFAULT_IDENTITIES))
    p.add_argument('--trials', type=int, default=config.DEFAULT_POWER_TRIALS)
    p.add_argument('--max-degree', type=int, default=config.DEFAULT_POWER_DEGREE)

    p = sub.add_parser('split', parents=[common], help="bracket and product halves")
    p.add_argument('algebra')

    p = sub.add_parser('pierce', parents=[common], help="Pierce decomposition")
    p.add_argument('algebra')
    p.add_argument('--idempotent', help='coordinates, e.g. "0,0,1"')

    p = sub.add_parser('nilradical', parents=[common], help="radicals and simplicity")
    p.add_argument('algebra')

    p = sub.add_parser('cohomology', parents=[common], help="coboundaries and H⁰, H¹, H²")
    p.add_argument('algebra')
    p.add_argument('--degree', type=int, choices=(0, 1, 2))
    p.add_argument('--basis', action='store_true', help="include Z² and B² bases")
    p.add_argument('--two-sided', action='store_true', help="two-sided annihilator for H⁰")
    p.add_argument('--operators', metavar='COCHAINS',
                   help="classical operators of the cochains in this file")

    p = sub.add_parser('products', parents=[common], help="products compatible with a bracket")
    p.add_argument('lie')
    p.add_argument('--params', help="evaluate the associativity residual at these coordinates")

    p = sub.add_parser('deform', parents=[common], help="obstructions of a formal deformation")
    p.add_argument('algebra')
    p.add_argument('--terms', required=True, metavar='COCHAINS')
    p.add_argument('--order', type=int, default=config.DEFAULT_DEFORMATION_ORDER)

    p = sub.add_parser('symalg', parents=[common], help="truncated symmetric algebra S_p(g)")
    p.add_argument('lie')
    p.add_argument('--truncation', type=int, default=config.DEFAULT_TRUNCATION)
    p.add_argument('--emit', metavar='FILE', help="also write the algebra JSON here")
    p.add_argument('--spectrum', metavar='COORDS', help="ad spectrum of this element")

    p = sub.add_parser('catalog', parents=[common], help="named fixtures")
    csub = p.add_subparsers(dest='action', parser_class=_Parser)
    csub.add_parser('list', parents=[common])
    show = csub.add_parser('show', parents=[common])
    show.add_argument('name')
    show.add_argument('--param', action='append', default=[], metavar='NAME=VALUE')
    show.add_argument('--emit', metavar='FILE')
    audit = csub.add_parser('audit', parents=[common])
    audit.add_argument('names', nargs='*')
    audit.add_argument('--export', metavar='FILE')
    audit.add_argument('--format', default=config.DEFAULT_EXPORT_FORMAT,
                       choices=config.SUPPORTED_EXPORT_FORMATS)
    return parser


# ---------------------------------------------------------------------------
# Commands


def _check(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    names = [n.strip() for n in args.identities.split(',') if n.strip()]
    rng = np.random.default_rng(args.seed)
    report = identities.run_checks(alg, names, rng=rng, trials=args.trials,
                                   max_total_degree=args.max_degree)
    return report.to_dict()


def _split(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    pair = structure.split(alg)
    return {
        'bracket': algebra_to_dict(pair.bracket),
        'product': algebra_to_dict(pair.product),
        'lie_center': subspace_to_dict(structure.lie_center(pair)),
    }


def _pierce(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    if args.idempotent:
        return structure.pierce(alg, parse_element(args.idempotent)).to_dict()
    found = structure.find_idempotents(alg)
    unit = structure.find_unit(alg)
    return {
        'decompositions': [structure.pierce(alg, e, require_admissible=False).to_dict()
                           for e in found],
        'unit': None if unit is None else element_to_list(unit),
    }


def _nilradical(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    rng = np.random.default_rng(args.seed)
    payload = structure.radicals(alg, rng=rng).to_dict()
    payload['multiplication_algebra'] = structure.multiplication_algebra(alg, rng=rng).to_dict()
    return payload


def _cohomology(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    if args.degree == 0:
        return {'h0_basis': subspace_to_dict(coh.delta0(alg, args.two_sided))}
    if args.degree == 1:
        spaces = coh.derivation_spaces(alg)
        return {
            'h1_dims': list(spaces.h1_dims),
            'bracket_derivations_dim': spaces.bracket_derivations.dim,
            'product_derivations_dim': spaces.product_derivations.dim,
            'inner_derivations_dim': spaces.inner.dim,
            'derivations_split': spaces.splits,
        }
    payload = coh.cohomology_report(alg, args.basis, args.two_sided).to_dict(args.basis)
    if args.operators:
        pair = structure.split(alg)
        payload['operators'] = [
            {'operators': coh.classical_operators(pair, phi).to_dict(),
             'criteria': coh.cocycle_criteria(alg, phi),
             'is_biderivation': coh.is_biderivation(pair, phi)}
            for phi in cochains_from_json(load_json(args.operators), args.operators)
        ]
    return payload


def _products(args, stdin) -> Any:
    bracket = load_algebra(args.lie, stdin)
    space = structure.compatible_products(bracket)
    payload = space.to_dict()
    if args.params:
        residual = space.associativity_residual(parse_element(args.params))
        payload['associative'] = residual.is_zero()
    return payload


def _deform(args, stdin) -> Any:
    alg = load_algebra(args.algebra, stdin)
    terms = cochains_from_json(load_json(args.terms), args.terms)
    d = deformations.FormalDeformation(alg, tuple(terms)).truncated(args.order)
    return deformations.obstructions(d).to_dict()


def _symalg(args, stdin) -> Any:
    data = load_json(args.lie, stdin)
    lie = symalg.LiePresentation.from_algebra(algebra_from_dict(data, args.lie),
                                              data.get('generators'))
    sym = symalg.symmetric_algebra(lie, args.truncation)
    algebra = algebra_to_dict(sym.to_algebra())
    if args.emit and not DataHandler().write_json(algebra, args.emit):
        raise OSError(f"cannot write {args.emit}")
    payload = {
        'dim': sym.dim,
        'monomials': sym.basis.labels(),
        'truncation_is_ideal': symalg.truncation_is_ideal(sym),
        'algebra': algebra,
    }
    if args.spectrum:
        payload['spectrum'] = symalg.ad_spectrum(sym.pair, parse_element(args.spectrum)).to_dict()
    return payload


def _catalog(args, stdin) -> Any:
    if args.action == 'list':
        return [AlgebraCatalog.describe(name) for name in AlgebraCatalog.get_fixture_list()]
    if args.action == 'show':
        alg = AlgebraCatalog.get(args.name, **parse_params(args.param))
        generators = None
        if 'lie' in AlgebraCatalog.FIXTURES[args.name]:
            generators = AlgebraCatalog.lie(args.name).generators
        data = algebra_to_dict(alg, generators)
        if args.emit and not DataHandler().write_json(data, args.emit):
            raise OSError(f"cannot write {args.emit}")
        return data
    if args.action == 'audit':
        report = audit_all(args.names or None, seed=args.seed)
        if args.export and not DataHandler().export_report(report.to_rows(), args.export,
                                                           args.format):
            raise OSError(f"cannot export to {args.export}")
        return report.to_dict()
    raise _ArgumentError("catalog needs one of: list, show, audit")


HANDLERS = {
    'check': _check,
    'split': _split,
    'pierce': _pierce,
    'nilradical': _nilradical,
    'cohomology': _cohomology,
    'products': _products,
    'deform': _deform,
    'symalg': _symalg,
    'catalog': _catalog,
}


def run(argv: List[str], stdin: Optional[TextIO] = None) -> CommandResult:
    """Parse and execute one command without printing anything."""
    try:
        args = build_parser().parse_args(argv)
    except _ArgumentError as e:
        return CommandResult('error', diagnostics=[str(e)], exit_code=1)
    if args.command is None:
        return CommandResult('error', diagnostics=[f"expected a command: {', '.join(COMMANDS)}"],
                             exit_code=1)
    if args.verbose:
        logging.getLogger(config.LOGGER_NAME).setLevel(logging.DEBUG)

    try:
        payload = HANDLERS[args.command](args, stdin)
    except _ArgumentError as e:
        return CommandResult('error', diagnostics=[str(e)], exit_code=1)
    except InvariantViolation as e:
        logger.error(f"{args.command}: internal invariant violated: {e}")
        return CommandResult('error', diagnostics=[str(e)], exit_code=2)
    except (AlgebraError, OSError) as e:
        logger.warning(f"{args.command}: {e}")
        return CommandResult('error', diagnostics=[str(e)], exit_code=1)
    return CommandResult('ok', payload, out=args.out, pretty=args.pretty)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    debug = config.DEBUG_MODE or '--verbose' in argv
    setup_logger(log_file=config.LOG_FILE,
                 level=logging.DEBUG if debug else logging.WARNING)

    result = run(argv)
    if not result.ok:
        print(dumps(result.to_dict()))
        return result.exit_code
    if result.out:
        if not DataHandler().write_json(result.payload, result.out):
            print(dumps({'status': 'error', 'payload': None,
                         'diagnostics': [f"cannot write {result.out}"]}))
            return 1
        return 0
    print(render(result.payload) if result.pretty else dumps(result.payload))
    return 0
