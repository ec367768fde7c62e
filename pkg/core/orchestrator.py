"""
orchestrator - dispatches cli commands and runs the verify suite
"""

import concurrent.futures
import copy
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO, Tuple

import yaml

from core.chern import (
    ChernError, ProjProduct, chern_number_table, chern_numbers,
    complete_intersection_chern_numbers,
)
from core.cobordism import (
    CobordismError, bundle_choices, class_of, decompose, genus_value, hrr_check,
    hrr_via_chern_numbers, hrrc_check, products_up_to,
    verify_basis_idempotence, verify_ell_multiplicativity,
)
from core.exactnum import ExactArithmeticError, format_rational
from core.lazard import (
    LazardElement, LazardError, chi, g_series, is_graded, specialize, universal_fgl,
    universal_log, verify_chi, verify_fgl_axioms, verify_g_axiom, verify_lagrange_inversion,
    verify_log_additivity, verify_nontrivial_quotient,
)
from core.models import Command, IdentityReport
from core.series import SeriesError
from parsers.expression_parser import ParseError
from parsers.genus_parser import GenusParser
from parsers.variety_parser import VarietyParser
from utils.linalg import SingularMatrixError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / 'config' / 'defaults.yaml'

DEFAULTS = {
    'global_settings': {
        'default_order': 8,
        'max_order': 16,
        'warn_order': 12,
        'max_workers': 4,
    },
    'genera': {},
    'verify': {
        'fgl_axioms': True,
        'g_axiom_specs': ['additive', 'multiplicative'],
        'lagrange_max_r': 4,
        'hrr_max_dimension': 4,
        'milnor_max_degree': 4,
        'hrrc': {
            'enabled': True,
            'varieties': ['P2', 'P1xP1'],
            'max_bundles': 1,
            'degree_range': [-1, 2],
        },
    },
}

SUBCOMMANDS = ('fgl', 'log', 'gseries', 'chi', 'genus', 'chern', 'decompose', 'hrr', 'hrrc', 'verify')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMPUTATION_ERRORS = (
    ExactArithmeticError, SeriesError, LazardError, ChernError, CobordismError, SingularMatrixError,
)


class UsageError(ValueError):
    """invalid flag combination or out-of-range order"""


@dataclass
class Outcome:
    """rendered result of one command"""
    lines: List[str]
    payload: object
    passed: bool = True
    reports: List[IdentityReport] = field(default_factory=list)


def _merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_config(config: Dict) -> Dict:
    """type-check the merged config, raising UsageError on the first bad value"""
    for section in ('global_settings', 'genera', 'verify'):
        if not isinstance(config.get(section), dict):
            raise UsageError(f"'{section}' must be a mapping")

    settings = config['global_settings']
    for key in ('default_order', 'max_order', 'warn_order', 'max_workers'):
        if not _is_int(settings.get(key)) or settings[key] < 1:
            raise UsageError(f"global_settings.{key} must be a positive integer, got {settings.get(key)!r}")
    if not 2 <= settings['default_order'] <= settings['max_order']:
        raise UsageError(f"default_order {settings['default_order']} outside [2, {settings['max_order']}]")

    suite = config['verify']
    for key in ('lagrange_max_r', 'hrr_max_dimension', 'milnor_max_degree'):
        if not _is_int(suite.get(key)) or suite[key] < 0:
            raise UsageError(f"verify.{key} must be a non-negative integer, got {suite.get(key)!r}")
    hrrc = suite.get('hrrc')
    if not isinstance(hrrc, dict):
        raise UsageError("verify.hrrc must be a mapping")
    degree_range = hrrc.get('degree_range')
    if (not isinstance(degree_range, (list, tuple)) or len(degree_range) != 2
            or not all(_is_int(x) for x in degree_range) or degree_range[0] > degree_range[1]):
        raise UsageError(f"verify.hrrc.degree_range must be [low, high], got {degree_range!r}")
    if not _is_int(hrrc.get('max_bundles')) or hrrc['max_bundles'] < 1:
        raise UsageError(f"verify.hrrc.max_bundles must be a positive integer, got {hrrc.get('max_bundles')!r}")
    if not isinstance(hrrc.get('varieties'), list):
        raise UsageError("verify.hrrc.varieties must be a list")
    return config


def render_report(report: IdentityReport) -> List[str]:
    """'PASS name', or 'FAIL name' with both sides in full"""
    if report.passed:
        return [f"PASS {report.name}"]
    lines = [f"FAIL {report.name}", f"  lhs: {report.lhs}", f"  rhs: {report.rhs}"]
    if report.detail:
        lines.append(f"  detail: {report.detail}")
    return lines


class Orchestrator:
    """master controller for the cobordism toolkit"""

    def __init__(self, config_path: Optional[str] = None):
        self.config = self._load_config(config_path)
        self.settings = self.config['global_settings']
        self.genus_parser = GenusParser(self.config.get('genera'), max_index=self.settings['max_order'])
        self.handlers: Dict[str, Callable[[Command], Outcome]] = {
            'fgl': self._run_fgl,
            'log': self._run_log,
            'gseries': self._run_gseries,
            'chi': self._run_chi,
            'genus': self._run_genus,
            'chern': self._run_chern,
            'decompose': self._run_decompose,
            'hrr': self._run_hrr,
            'hrrc': self._run_hrrc,
            'verify': self._run_verify,
        }

    def _load_config(self, config_path: Optional[str]) -> Dict:
        """load configuration from yaml file, falling back to built-in defaults"""
        path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        try:
            with open(path, 'r') as f:
                loaded = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"failed to load config: {e}")
            loaded = {}
        if not isinstance(loaded, dict):
            logger.error(f"config {path} is not a mapping, using defaults")
            loaded = {}
        try:
            return _check_config(_merge(DEFAULTS, loaded))
        except UsageError as e:
            logger.error(f"invalid config {path}: {e}, using defaults")
            return copy.deepcopy(DEFAULTS)

    @property
    def default_order(self) -> int:
        return self.settings['default_order']

    # validation

    def validate(self, command: Command) -> Command:
        """check flags before any computation"""
        if command.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand: {command.subcommand}")
        if command.format not in ('text', 'json'):
            raise UsageError(f"unknown format: {command.format}")
        if command.order < 2:
            raise UsageError(f"order must be at least 2, got {command.order}")
        if command.order > self.settings['max_order']:
            raise UsageError(f"order {command.order} exceeds the cap of {self.settings['max_order']}")
        if command.order > self.settings['warn_order']:
            logger.warning(f"order {command.order} is above {self.settings['warn_order']}, expect a long run")

        needs_variety = command.subcommand in ('genus', 'chern', 'decompose', 'hrr', 'hrrc')
        if needs_variety and not command.variety:
            raise UsageError(f"{command.subcommand} needs --variety")
        if command.subcommand == 'genus' and not command.spec:
            raise UsageError("genus needs --spec")
        if command.subcommand == 'hrrc' and not command.bundles:
            raise UsageError("hrrc needs at least one --bundles")
        if command.bundles and command.subcommand not in ('genus', 'chern', 'decompose', 'hrrc'):
            raise UsageError(f"{command.subcommand} takes no --bundles")
        if command.subcommand == 'hrr' and command.spec:
            raise UsageError("hrr takes no --spec")
        return command

    def _variety(self, command: Command) -> Tuple[ProjProduct, tuple]:
        variety = VarietyParser.parse_variety(command.variety)
        bundles = VarietyParser.parse_bundles(command.bundles, variety)
        if len(bundles) > variety.dimension:
            raise UsageError(f"{len(bundles)} bundles on {variety} of dimension {variety.dimension}")
        return variety, bundles

    def _spec(self, command: Command):
        return self.genus_parser.parse(command.spec) if command.spec else None

    # entry point

    def run(self, command: Command, out: TextIO = None) -> int:
        """run one command, write its output, return the exit status"""
        out = out or sys.stdout
        try:
            self.validate(command)
            outcome = self.handlers[command.subcommand](command)
        except (UsageError, ParseError) as e:
            logger.error(f"{e}")
            return EXIT_USAGE
        except COMPUTATION_ERRORS as e:
            logger.error(f"{command.subcommand} failed: {e}")
            return EXIT_FAILED

        if command.format == 'json':
            out.write(json.dumps(outcome.payload, indent=2, ensure_ascii=False) + '\n')
        else:
            for line in outcome.lines:
                out.write(line + '\n')
        return EXIT_OK if outcome.passed else EXIT_FAILED

    # lazard commands

    def _run_fgl(self, command: Command) -> Outcome:
        fgl = universal_fgl(command.order)
        spec = self._spec(command)
        if spec is not None:
            fgl = specialize(fgl, spec)
        payload = fgl.to_dict()
        if spec is not None:
            payload['spec'] = spec.name
        return Outcome(fgl.dump(), payload)

    def _run_log(self, command: Command) -> Outcome:
        series = universal_log(command.order)
        spec = self._spec(command)
        if spec is not None:
            series = specialize(series, spec)
        return Outcome([f"h(u) = {series}"], {'order': command.order, 'series': str(series)})

    def _run_gseries(self, command: Command) -> Outcome:
        series = g_series(command.order)
        spec = self._spec(command)
        if spec is not None:
            series = specialize(series, spec)
        coefficients = [str(series.coefficient(i)) for i in range(command.order)]
        lines = [f"g(u) = {series}"] + [f"t[{i}] = {c}" for i, c in enumerate(coefficients)]
        return Outcome(lines, {'order': command.order, 'series': str(series), 'coefficients': coefficients})

    def _run_chi(self, command: Command) -> Outcome:
        fgl = universal_fgl(command.order)
        spec = self._spec(command)
        if spec is not None:
            fgl = specialize(fgl, spec)
        inverse = chi(fgl)
        return Outcome([f"chi(u) = {inverse}"], {'order': command.order, 'series': str(inverse)})

    # geometric commands

    def _run_genus(self, command: Command) -> Outcome:
        variety, bundles = self._variety(command)
        spec = self._spec(command)
        if command.order <= variety.dimension:
            raise UsageError(f"order {command.order} must exceed dim {variety} = {variety.dimension}")
        value = format_rational(genus_value(variety, spec, command.order, bundles))
        return Outcome([value], {
            'variety': str(variety),
            'bundles': [str(b) for b in bundles],
            'spec': spec.name,
            'value': value,
        })

    def _chern_input(self, variety: ProjProduct, bundles: tuple):
        if bundles:
            return complete_intersection_chern_numbers(variety, bundles), variety.dimension - len(bundles)
        return chern_numbers(variety), variety.dimension

    def _run_chern(self, command: Command) -> Outcome:
        variety, bundles = self._variety(command)
        numbers, _ = self._chern_input(variety, bundles)
        table = chern_number_table(numbers)
        return Outcome([f"C[{p}] = {v}" for p, v in table.items()], table)

    def _run_decompose(self, command: Command) -> Outcome:
        variety, bundles = self._variety(command)
        numbers, degree = self._chern_input(variety, bundles)
        report = decompose(numbers, degree)
        element = class_of(report)
        lines = [f"degree = {degree}"]
        for partition, alpha in zip(report.basis, report.coordinates):
            target = 'pt' if not partition else 'x'.join(f"P{j}" for j in partition)
            lines.append(f"{target}: {format_rational(alpha)}")
        lines.append(f"class = {element}")
        payload = report.to_dict()
        payload['class'] = str(element)
        return Outcome(lines, payload)

    def _riemann_roch_outcome(self, report) -> Outcome:
        identity = report.as_identity()
        lines = [f"lhs = {report.lhs}", f"rhs = {report.rhs}"] + render_report(identity)
        return Outcome(lines, report.to_dict(), passed=report.passed, reports=[identity])

    def _run_hrr(self, command: Command) -> Outcome:
        variety, _ = self._variety(command)
        if command.order <= variety.dimension:
            raise UsageError(f"order {command.order} must exceed dim {variety} = {variety.dimension}")
        return self._riemann_roch_outcome(hrr_check(variety, command.order))

    def _run_hrrc(self, command: Command) -> Outcome:
        variety, bundles = self._variety(command)
        if command.order <= variety.dimension:
            raise UsageError(f"order {command.order} must exceed dim {variety} = {variety.dimension}")
        return self._riemann_roch_outcome(hrrc_check(variety, bundles, command.order))

    # verify suite

    def build_checks(self, order: int) -> List[Tuple[str, Callable[[], List[IdentityReport]]]]:
        """named checks in output order"""
        suite = self.config['verify']
        checks: List[Tuple[str, Callable[[], List[IdentityReport]]]] = []

        if suite.get('fgl_axioms', True):
            checks.append(('fgl-axioms', lambda: verify_fgl_axioms(universal_fgl(order)).as_identities()))
        checks.append(('fgl-grading', lambda: [self._grading_report(order)]))
        checks.append(('g-axiom', lambda: [verify_g_axiom(order)]))
        for name in suite.get('g_axiom_specs') or []:
            spec = self.genus_parser.parse(name)
            checks.append((f'g-axiom[{name}]', lambda spec=spec: [verify_g_axiom(order, spec)]))

        lagrange_max_r = suite.get('lagrange_max_r', 4)
        checks.append(('lagrange-inversion', lambda: verify_lagrange_inversion(lagrange_max_r, order)))
        checks.append(('log-additivity', lambda: verify_log_additivity(order)))
        checks.append(('chi', lambda: verify_chi(universal_fgl(order))))
        checks.append(('nontrivial-quotient', lambda: [verify_nontrivial_quotient(order)]))

        for d in range(0, suite.get('milnor_max_degree', 4) + 1):
            checks.append((f'milnor-basis[d={d}]', lambda d=d: [verify_basis_idempotence(d)]))

        hrr_dimension = min(suite.get('hrr_max_dimension', 4), order - 1)
        for variety in products_up_to(hrr_dimension):
            checks.append((f'hrr[{variety}]', lambda x=variety: self._hrr_reports(x, order)))

        pairs = [(ProjProduct((1,)), ProjProduct((1,))), (ProjProduct((1,)), ProjProduct((2,)))]
        for first, second in pairs:
            if first.dimension + second.dimension <= hrr_dimension:
                checks.append((f'ell-multiplicativity[{first}x{second}]',
                               lambda a=first, b=second: [verify_ell_multiplicativity(a, b)]))

        hrrc = suite.get('hrrc') or {}
        if hrrc.get('enabled', False):
            low, high = hrrc.get('degree_range', [-1, 2])
            for text in hrrc.get('varieties', []):
                variety = VarietyParser.parse_variety(text)
                if variety.dimension >= order:
                    continue
                for count in range(1, min(hrrc.get('max_bundles', 1), variety.dimension) + 1):
                    for bundles in bundle_choices(variety, count, low, high):
                        label = f"hrrc[{variety} {' '.join(str(b) for b in bundles)}]"
                        checks.append((label, lambda x=variety, b=bundles:
                                       [hrrc_check(x, b, order).as_identity()]))
        return checks

    def _grading_report(self, order: int) -> IdentityReport:
        fgl = universal_fgl(order)
        a11 = fgl.coefficient(1, 1)
        expected = -LazardElement.generator(1)
        passed = is_graded(fgl) and a11 == expected
        return IdentityReport('fgl-grading', passed, f"a[1,1] = {a11}", f"a[1,1] = {expected}",
                              "a[i,j] homogeneous of degree i+j-1")

    def _hrr_reports(self, variety: ProjProduct, order: int) -> List[IdentityReport]:
        direct = hrr_check(variety, order)
        reports = [direct.as_identity(), hrr_via_chern_numbers(variety, order).as_identity()]

        # todd genus is 1, the additive genus vanishes in positive dimension
        for preset, expected in (('multiplicative', 1), ('additive', 0)):
            value = specialize(direct.lhs, self.genus_parser.parse(preset))
            reports.append(IdentityReport(f'genus-{preset}[{variety}]', value == expected,
                                          format_rational(value), str(expected)))
        return reports

    def _safe_check(self, name: str, check: Callable[[], List[IdentityReport]]) -> List[IdentityReport]:
        """run one check, turning exceptions into a failed report"""
        try:
            return check()
        except COMPUTATION_ERRORS as e:
            logger.error(f"✗ {name} raised: {e}")
            return [IdentityReport(name, False, 'error', '', str(e))]

    def run_checks(self, order: int) -> List[IdentityReport]:
        """run all checks in parallel, merged in input order"""
        checks = self.build_checks(order)
        max_workers = self.settings.get('max_workers', 4)
        logger.info(f"running {len(checks)} checks at order {order} on {max_workers} workers")

        with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = [executor.submit(self._safe_check, name, check) for name, check in checks]
            results = [future.result() for future in futures]

        return [report for reports in results for report in reports]

    def _run_verify(self, command: Command) -> Outcome:
        logger.info("=" * 60)
        logger.info("COBORDISM VERIFY SUITE")
        logger.info("=" * 60)

        reports = self.run_checks(command.order)
        lines = []
        for report in reports:
            lines.extend(render_report(report))
        passed = all(r.passed for r in reports)
        self._generate_summary_report(reports)

        payload = {
            'order': command.order,
            'checks': [r.to_dict() for r in reports],
            'passed': sum(r.passed for r in reports),
            'failed': sum(not r.passed for r in reports),
            'pass': passed,
        }
        return Outcome(lines, payload, passed=passed, reports=reports)

    def _generate_summary_report(self, reports: List[IdentityReport]):
        failed = [r for r in reports if not r.passed]

        logger.info("\n" + "=" * 60)
        logger.info("VERIFY SUMMARY")
        logger.info("=" * 60)
        logger.info(f"\ntotal identities: {len(reports)}")
        logger.info(f"  - passed: {len(reports) - len(failed)}")
        logger.info(f"  - failed: {len(failed)}")
        for report in failed:
            logger.info(f"  ✗ {report.name}")

        logger.info("\n" + "=" * 60)
        logger.info("✓ ALL IDENTITIES HOLD" if not failed else "✗ SOME IDENTITIES FAILED")
        logger.info("=" * 60)
