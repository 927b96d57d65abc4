"""
Named admissible Poisson algebras as executable fixtures.

Tables are stored with 0-based indices: e1, e2, e3 are indices 0, 1, 2.
Parametrized families take rational parameters by keyword; the audit
samples them from config.SAMPLE_PARAMETERS.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional

import numpy as np

import config
from core.algebra import (AlgebraStructure, LinearMap, change_basis, direct_sum,
                          multiply)
from core.cohomology import cohomology_report
from core.exactnum import (RationalLike, Subspace, format_rational,
                           random_invertible, to_rational)
from core.exceptions import AlgebraError, PreconditionError
from core.identities import run_checks
from core.structure import (PoissonPair, compatible_products, derived_square,
                            find_unit, is_idempotent, lie_center, split)
from core.symalg import (LiePresentation, graded_three, rigid_six,
                         torus_rank2, two_dim_nonabelian)
from utils.logger import LoggerMixin


def _p31(gamma):
    return AlgebraStructure.from_products(3, {
        (0, 1): {2: 1 + gamma},
        (1, 0): {2: -1 + gamma},
    })


def _p32():
    return AlgebraStructure.from_products(3, {
        (0, 0): {2: 1},
        (0, 1): {2: 1},
        (1, 0): {2: -1},
    })


def _p33(alpha):
    return AlgebraStructure.from_products(3, {
        (0, 0): {2: alpha * alpha},
        (0, 1): {1: 1},
        (1, 0): {1: -1},
        (0, 2): {2: alpha},
        (2, 0): {2: alpha},
        (2, 2): {2: 1},
    })


def _p34():
    return AlgebraStructure.from_products(3, {
        (0, 0): {2: 1},
        (0, 1): {1: 1},
        (1, 0): {1: -1},
    })


def _p35():
    return AlgebraStructure.from_products(3, {(0, 1): {1: 1}}, skew=True)


def _p36():
    return AlgebraStructure.from_products(3, {
        (2, 2): {2: 1},
        (0, 1): {1: 1},
        (1, 0): {1: -1},
        (0, 2): {0: 1},
        (2, 0): {0: 1},
        (1, 2): {1: 1},
        (2, 1): {1: 1},
    })


def _p37(alpha):
    if alpha == 0:
        raise PreconditionError("P_3_7 requires alpha != 0; alpha = 0 is the P_3_5 table")
    return AlgebraStructure.from_products(3, {(0, 1): {1: 1}, (0, 2): {2: alpha}}, skew=True)


def _p38():
    return AlgebraStructure.from_products(3, {(0, 1): {1: 1, 2: 1}, (0, 2): {2: 1}}, skew=True)


def _p39():
    return AlgebraStructure.from_products(3, {
        (0, 1): {1: 2},
        (0, 2): {2: -2},
        (1, 2): {0: 1},
    }, skew=True)


def _remark_nil():
    return AlgebraStructure.from_products(3, {
        (0, 1): {1: 1},
        (0, 2): {2: -1},
        (1, 2): {0: 1},
    }, skew=True)


def _p26():
    return AlgebraStructure.from_products(2, {(0, 1): {1: 1}}, skew=True)


def _heisenberg(alpha, beta, gamma):
    return AlgebraStructure.from_products(3, {
        (0, 0): {2: alpha},
        (1, 1): {2: beta},
        (0, 1): {2: gamma + 1},
        (1, 0): {2: gamma - 1},
    })


def _lie_table(builder: Callable[[], LiePresentation]) -> Callable[[], AlgebraStructure]:
    return lambda: builder().bracket


FIXTURES: Dict[str, dict] = {
    'P_3_1': {
        'description': 'e1e2 = (1+γ)e3, e2e1 = (−1+γ)e3',
        'builder': _p31,
        'parameters': ['gamma'],
        'expected': {'bracket': 'heisenberg'},
    },
    'P_3_2': {
        'description': 'e1² = e3, e1e2 = e3, e2e1 = −e3',
        'builder': _p32,
        'expected': {'bracket': 'heisenberg', 'product_trivial': False},
    },
    'P_3_3': {
        'description': 'e1² = α²e3, e1e2 = −e2e1 = e2, e1e3 = e3e1 = αe3, e3² = e3',
        'builder': _p33,
        'parameters': ['alpha'],
        'expected': {'bracket': 'solvable', 'idempotent': ['0', '0', '1']},
    },
    'P_3_4': {
        'description': 'e1² = e3, e1e2 = −e2e1 = e2',
        'builder': _p34,
        'expected': {'bracket': 'solvable', 'product_trivial': False},
    },
    'P_3_5': {
        'description': 'e1e2 = −e2e1 = e2',
        'builder': _p35,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'P_3_6': {
        'description': 'e3² = e3, e1e2 = −e2e1 = e2, e1e3 = e3e1 = e1, e2e3 = e3e2 = e2',
        'builder': _p36,
        'expected': {'bracket': 'solvable', 'unit': ['0', '0', '1']},
    },
    'P_3_7': {
        'description': 'e1e2 = −e2e1 = e2, e1e3 = −e3e1 = αe3 (α ≠ 0)',
        'builder': _p37,
        'parameters': ['alpha'],
        'nonzero': ['alpha'],
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'P_3_8': {
        'description': 'e1e2 = −e2e1 = e2 + e3, e1e3 = −e3e1 = e3',
        'builder': _p38,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'P_3_9': {
        'description': 'e1e2 = −e2e1 = 2e2, e1e3 = −e3e1 = −2e3, e2e3 = −e3e2 = e1',
        'builder': _p39,
        'expected': {'bracket': 'sl2', 'product_trivial': True, 'compatible_products': 0},
    },
    'sl2': {
        'description': 'sl₂ in the basis (h, e, f), the P_3_9 table',
        'builder': _p39,
        'expected': {'bracket': 'sl2', 'compatible_products': 0},
    },
    'remark_nil': {
        'description': 'e1e2 = e2, e1e3 = −e3, e2e3 = e1, all skew: a simple nilalgebra',
        'builder': _remark_nil,
        'expected': {'bracket': 'sl2', 'product_trivial': True},
    },
    'P_2_6': {
        'description': '2-dim non-abelian: e1e2 = −e2e1 = e2',
        'builder': _p26,
        'expected': {'bracket': 'solvable', 'dim_H2': 0, 'compatible_products': 0},
    },
    'zero': {
        'description': 'zero product in dimension dim',
        'builder': lambda dim=3: AlgebraStructure.zero(int(dim)),
        'optional': {'dim': '3'},
        'expected': {'bracket': 'abelian', 'product_trivial': True},
    },
    'comm_2_unit': {
        'description': 'e1•e1 = e1 (commutative associative, from reference)',
        'builder': lambda: AlgebraStructure.from_products(2, {(0, 0): {0: 1}}),
        'source': 'reference',
        'expected': {'bracket': 'abelian', 'idempotent': ['1', '0']},
    },
    'comm_2_nil': {
        'description': 'e1•e1 = e2 (commutative associative, from reference)',
        'builder': lambda: AlgebraStructure.from_products(2, {(0, 0): {1: 1}}),
        'source': 'reference',
        'expected': {'bracket': 'abelian', 'product_trivial': False},
    },
    'heisenberg': {
        'description': 'bracket {e1,e2} = e3 with e1•e1 = αe3, e2•e2 = βe3, e1•e2 = γe3',
        'builder': _heisenberg,
        'parameters': ['alpha', 'beta', 'gamma'],
        'expected': {'bracket': 'heisenberg', 'compatible_products': 3},
    },
    'assoc_2': {
        'description': 'e1e1 = e1, e1e2 = e2: associative but not admissible',
        'builder': lambda: AlgebraStructure.from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}}),
        'expected': {'admissible': False, 'flexible': True, 'eq6': True, 'sigma3': True},
        'poisson': False,
    },
    'nonflexible_2': {
        'description': 'e1e1 = e2, e1e2 = e1: fails flexibility and the associator relation',
        'builder': lambda: AlgebraStructure.from_products(2, {(0, 0): {1: 1}, (0, 1): {0: 1}}),
        'expected': {'admissible': False, 'flexible': False, 'eq6': False, 'sigma3': False},
        'poisson': False,
    },
    'sym_ex1': {
        'description': 'Lie algebra [X, Y] = Y',
        'builder': _lie_table(two_dim_nonabelian),
        'lie': two_dim_nonabelian,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'sym_ex2': {
        'description': 'Lie algebra [X, Y_i] = i·Y_i, i = 1, 2',
        'builder': _lie_table(graded_three),
        'lie': graded_three,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'sym_ex3': {
        'description': 'rigid Lie algebra [X, Y_i] = i·Y_i, [Y1, Y_i] = Y_{i+1}, [Y2, Y3] = Y5',
        'builder': _lie_table(rigid_six),
        'lie': rigid_six,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
    'torus_rank2': {
        'description': 'Lie algebra [X1, Y1] = Y1, [X2, Y2] = Y2',
        'builder': _lie_table(torus_rank2),
        'lie': torus_rank2,
        'expected': {'bracket': 'solvable', 'product_trivial': True},
    },
}


def derived_series(bracket: AlgebraStructure) -> List[int]:
    """Dimensions of g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ … until it stabilises."""
    current = derived_square(bracket)
    dims = [bracket.dim, current.dim]
    while current.dim:
        vectors = current.vectors()
        nxt = Subspace.span([multiply(bracket, x, y) for x in vectors for y in vectors],
                            bracket.dim)
        if nxt == current:
            break
        current = nxt
        dims.append(current.dim)
    return dims


def bracket_type(pair: PoissonPair) -> str:
    """'abelian', 'heisenberg', 'sl2' (perfect, dim 3), 'solvable' or 'other'."""
    derived = derived_square(pair.bracket)
    if derived.dim == 0:
        return 'abelian'
    if derived.dim == 1 and lie_center(pair).contains_subspace(derived):
        return 'heisenberg'
    if pair.dim == 3 and derived.is_whole():
        return 'sl2'
    if derived_series(pair.bracket)[-1] == 0:
        return 'solvable'
    return 'other'


class AlgebraCatalog:
    """
    Registry of named fixtures.
    """

    FIXTURES = FIXTURES

    @classmethod
    def get_fixture_list(cls) -> List[str]:
        return list(cls.FIXTURES.keys())

    @classmethod
    def describe(cls, name: str) -> dict:
        entry = cls._entry(name)
        return {
            'name': name,
            'description': entry['description'],
            'parameters': list(entry.get('parameters', [])),
            'optional': dict(entry.get('optional', {})),
            'source': entry.get('source', 'classification'),
            'poisson': entry.get('poisson', True),
        }

    @classmethod
    def _entry(cls, name: str) -> dict:
        if name not in cls.FIXTURES:
            raise PreconditionError(f"unknown fixture: {name}")
        return cls.FIXTURES[name]

    @classmethod
    def get(cls, name: str, **params: RationalLike) -> AlgebraStructure:
        """
        Build a fixture.

        Raises:
            PreconditionError: unknown name, missing or unexpected parameter
        """
        entry = cls._entry(name)
        required = entry.get('parameters', [])
        optional = entry.get('optional', {})
        missing = [p for p in required if p not in params]
        if missing:
            raise PreconditionError(f"{name} needs parameter(s): {', '.join(missing)}")
        unexpected = sorted(set(params) - set(required) - set(optional))
        if unexpected:
            raise PreconditionError(f"{name} has no parameter(s): {', '.join(unexpected)}")
        values = {k: to_rational(v) for k, v in params.items()}
        alg = entry['builder'](**values)
        label = name
        if values:
            label += '(' + ','.join(f"{k}={format_rational(v)}" for k, v in values.items()) + ')'
        return alg.with_name(label)

    @classmethod
    def lie(cls, name: str) -> LiePresentation:
        entry = cls._entry(name)
        if 'lie' not in entry:
            raise PreconditionError(f"{name} is not a Lie presentation")
        return entry['lie']()

    @classmethod
    def expected(cls, name: str) -> Dict[str, object]:
        return dict(cls._entry(name).get('expected', {}))

    @classmethod
    def sample_parameters(cls, name: str) -> List[Dict[str, Fraction]]:
        """Parameter assignments used by audits: each parameter over the sample set."""
        entry = cls._entry(name)
        required = entry.get('parameters', [])
        if not required:
            return [{}]
        nonzero = set(entry.get('nonzero', []))
        samples = []
        for value in config.SAMPLE_PARAMETERS:
            q = to_rational(value)
            assignment = {p: q for p in required}
            if q == 0 and nonzero.intersection(assignment):
                continue
            samples.append(assignment)
        return samples


@dataclass
class AuditRow:
    fixture: str
    check: str
    expected: object
    actual: object
    passed: bool

    def to_dict(self) -> dict:
        return {
            'fixture': self.fixture,
            'check': self.check,
            'expected': _plain(self.expected),
            'actual': _plain(self.actual),
            'passed': self.passed,
        }


def _plain(value):
    if isinstance(value, (list, tuple, np.ndarray)):
        return [format_rational(v) for v in value]
    return value


@dataclass
class AuditReport:
    rows: List[AuditRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> List[AuditRow]:
        return [row for row in self.rows if not row.passed]

    def to_rows(self) -> List[dict]:
        return [row.to_dict() for row in self.rows]

    def to_dict(self) -> dict:
        return {
            'passed': self.passed,
            'checked': len(self.rows),
            'failures': [row.to_dict() for row in self.failures()],
        }


class CatalogAuditor(LoggerMixin):
    """
    Checks every fixture (and every sampled parameter value) against its
    expected invariants. Failures are recorded, never raised.
    """

    def __init__(self, identities: Optional[List[str]] = None,
                 power_trials: int = config.AUDIT_POWER_TRIALS,
                 seed: int = config.DEFAULT_SEED):
        super().__init__()
        self.identities = identities or list(config.DEFAULT_IDENTITIES)
        self.power_trials = power_trials
        self.seed = seed

    def audit(self, names: Optional[List[str]] = None) -> AuditReport:
        report = AuditReport()
        for name in names or AlgebraCatalog.get_fixture_list():
            for params in AlgebraCatalog.sample_parameters(name):
                self._audit_one(name, params, report)
        self.log_info(f"audited {len(report.rows)} checks, "
                      f"{len(report.failures())} failures")
        return report

    def _audit_one(self, name: str, params: Mapping[str, Fraction], report: AuditReport):
        try:
            alg = AlgebraCatalog.get(name, **params)
        except AlgebraError as e:
            report.rows.append(AuditRow(name, 'build', True, str(e), False))
            return
        label = alg.name
        expected = AlgebraCatalog.expected(name)
        poisson = AlgebraCatalog.describe(name)['poisson']

        rng = np.random.default_rng(self.seed)
        names = [n for n in self.identities if poisson or n != 'power_associative']
        identities = run_checks(alg, names, rng=rng, trials=self.power_trials)
        for check in names:
            want = expected.get(check, True)
            got = identities[check]
            report.rows.append(AuditRow(label, check, want, got, want == got))
        if not poisson:
            return

        try:
            pair = split(alg)
        except AlgebraError as e:
            self.log_warning(f"{label}: split failed: {e}")
            report.rows.append(AuditRow(label, 'split', True, str(e), False))
            return
        for check, want in expected.items():
            if check in identities.verdicts:
                continue
            if check == 'idempotent':
                got = is_idempotent(alg, [to_rational(v) for v in want])
                report.rows.append(AuditRow(label, check, want, want if got else None, got))
                continue
            try:
                got = self._measure(check, alg, pair)
            except AlgebraError as e:
                got = f"error: {e}"
            report.rows.append(AuditRow(label, check, want, got, _matches(want, got)))

    @staticmethod
    def _measure(check: str, alg: AlgebraStructure, pair: PoissonPair):
        if check == 'bracket':
            return bracket_type(pair)
        if check == 'product_trivial':
            return pair.product.is_zero()
        if check == 'unit':
            unit = find_unit(alg)
            return None if unit is None else list(unit)
        if check == 'dim_H2':
            return cohomology_report(alg).dim_H2
        if check == 'compatible_products':
            return compatible_products(pair.bracket).dim
        raise ValueError(f"unknown audit check: {check}")


def _matches(want, got) -> bool:
    if isinstance(want, list):
        return got is not None and not isinstance(got, str) and \
            [to_rational(v) for v in want] == [to_rational(v) for v in got]
    return want == got


def audit_all(names: Optional[List[str]] = None, **kwargs) -> AuditReport:
    return CatalogAuditor(**kwargs).audit(names)


def _random_piece(rng: np.random.Generator, dim: int) -> AlgebraStructure:
    if dim == 1:
        options = [AlgebraStructure.zero(1),
                   AlgebraStructure.from_products(1, {(0, 0): {0: 1}})]
        return options[int(rng.integers(len(options)))]
    if dim == 2:
        names = ['P_2_6', 'comm_2_unit', 'comm_2_nil', 'sym_ex1']
        return AlgebraCatalog.get(names[int(rng.integers(len(names)))])
    names = [n for n in AlgebraCatalog.get_fixture_list()
             if n.startswith('P_3_') or n in ('remark_nil', 'heisenberg')]
    name = names[int(rng.integers(len(names)))]
    options = AlgebraCatalog.sample_parameters(name)
    return AlgebraCatalog.get(name, **options[int(rng.integers(len(options)))])


def random_admissible(rng: np.random.Generator, dim: int) -> AlgebraStructure:
    """
    A random admissible algebra of the given dimension: a direct sum of
    fixtures of dimension ≤ 3 under a random invertible base change.
    """
    if dim < 1:
        raise PreconditionError("dimension must be at least 1")
    remaining = dim
    alg = None
    while remaining:
        size = int(rng.integers(1, min(3, remaining) + 1))
        piece = _random_piece(rng, size)
        alg = piece if alg is None else direct_sum(alg, piece)
        remaining -= size
    p = LinearMap(random_invertible(rng, dim))
    return change_basis(alg, p).with_name(f"random_{dim}")
