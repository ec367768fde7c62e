"""
test the command line front end
"""

import io
import json

import pytest

import main
from core.models import Command, IdentityReport
from core.orchestrator import EXIT_FAILED, EXIT_OK, EXIT_USAGE, Orchestrator, render_report


def run(orchestrator, **kwargs):
    out = io.StringIO()
    status = orchestrator.run(Command(**kwargs), out=out)
    return status, out.getvalue()


@pytest.fixture(scope='module')
def orchestrator():
    return Orchestrator()


def test_config_defaults(orchestrator):
    assert orchestrator.default_order == 8
    assert orchestrator.settings['max_order'] == 16
    assert orchestrator.genus_parser.parse('signature').value(2) == 1


def test_missing_config_falls_back_to_defaults(tmp_path):
    fallback = Orchestrator(config_path=str(tmp_path / 'nope.yaml'))
    assert fallback.default_order == 8
    assert 'signature' not in fallback.genus_parser.presets


def test_config_override(tmp_path):
    path = tmp_path / 'custom.yaml'
    path.write_text("global_settings:\n  max_order: 10\n")
    custom = Orchestrator(config_path=str(path))
    assert custom.settings['max_order'] == 10
    assert custom.settings['warn_order'] == 12
    status, _ = run(custom, subcommand='fgl', order=11)
    assert status == EXIT_USAGE


@pytest.mark.parametrize('rules', [
    "{affine: [1]}",
    "{values: 5}",
    "{values: {x: 1}}",
    "[1, 2]",
])
def test_malformed_genus_preset_is_skipped(tmp_path, rules):
    path = tmp_path / 'genera.yaml'
    path.write_text(f"genera:\n  broken: {rules}\n  euler: {{affine: [1, 1]}}\n")
    custom = Orchestrator(config_path=str(path))
    assert 'broken' not in custom.genus_parser.presets
    assert custom.genus_parser.parse('euler').value(2) == 3
    assert run(custom, subcommand='genus', variety='P2', spec='broken')[0] == EXIT_USAGE


@pytest.mark.parametrize('text', [
    "global_settings:\n  max_order: sixteen\n",
    "global_settings:\n  default_order: 20\n",
    "global_settings:\n  max_workers: true\n",
    "global_settings: [1, 2]\n",
    "verify:\n  hrrc:\n    degree_range: [2]\n",
    "verify:\n  hrrc:\n    degree_range: [3, -1]\n",
    "verify:\n  hrrc:\n    degree_range: [a, b]\n",
    "verify:\n  lagrange_max_r: four\n",
])
def test_bad_config_values_fall_back_to_defaults(tmp_path, text):
    path = tmp_path / 'bad.yaml'
    path.write_text(text)
    fallback = Orchestrator(config_path=str(path))
    assert fallback.settings['max_order'] == 16
    assert fallback.config['verify']['hrrc']['degree_range'] == [-1, 2]
    status, output = run(fallback, subcommand='fgl', order=4)
    assert status == EXIT_OK
    assert 'a[1,1] = -p1' in output.splitlines()


def test_fgl_text(orchestrator):
    status, output = run(orchestrator, subcommand='fgl', order=4)
    assert status == EXIT_OK
    assert 'a[1,1] = -p1' in output.splitlines()
    assert 'a[1,2] = p1^2 + -p2' in output.splitlines()


def test_fgl_json_is_deterministic(orchestrator):
    first = run(orchestrator, subcommand='fgl', order=5, format='json')[1]
    second = run(orchestrator, subcommand='fgl', order=5, format='json')[1]
    assert first == second
    payload = json.loads(first)
    assert payload['coefficients']['1,1'] == '-p1'


def test_gseries_multiplicative(orchestrator):
    status, output = run(orchestrator, subcommand='gseries', order=4, spec='multiplicative')
    assert status == EXIT_OK
    assert 't[1] = -1/2' in output
    assert 't[2] = 1/6' in output


def test_genus_of_p2(orchestrator):
    assert run(orchestrator, subcommand='genus', variety='P2', spec='multiplicative') == (EXIT_OK, '1\n')
    assert run(orchestrator, subcommand='genus', variety='P2', spec='euler') == (EXIT_OK, '3\n')
    status, output = run(orchestrator, subcommand='genus', variety='P2', spec='p1=1,p2=1/2')
    assert status == EXIT_OK


def test_chern_and_decompose(orchestrator):
    status, output = run(orchestrator, subcommand='chern', variety='P2')
    assert status == EXIT_OK
    assert output.splitlines() == ['C[2] = 3', 'C[1+1] = 9']

    status, output = run(orchestrator, subcommand='decompose', variety='P1xP1',
                         bundles=['O(1,1)'], format='json')
    payload = json.loads(output)
    assert payload['basis'] == ['1']
    assert payload['coordinates'] == ['1']
    assert payload['class'] == 'p1'
    assert payload['pass'] is True


def test_hrr_and_hrrc(orchestrator):
    status, output = run(orchestrator, subcommand='hrr', variety='P1xP2', order=6)
    assert status == EXIT_OK
    assert 'PASS hrr[P1xP2]' in output

    status, output = run(orchestrator, subcommand='hrrc', variety='P2', bundles=['O(3)'], order=4)
    assert status == EXIT_OK
    assert 'lhs = 0' in output


@pytest.mark.parametrize('kwargs', [
    {'subcommand': 'hrr'},
    {'subcommand': 'genus', 'variety': 'P2'},
    {'subcommand': 'hrrc', 'variety': 'P2'},
    {'subcommand': 'chern', 'variety': 'P2xQ1'},
    {'subcommand': 'fgl', 'order': 17},
    {'subcommand': 'fgl', 'order': 1},
    {'subcommand': 'fgl', 'spec': 'nonsense'},
    {'subcommand': 'hrr', 'variety': 'P3', 'order': 3},
    {'subcommand': 'hrrc', 'variety': 'P1', 'bundles': ['O(1)', 'O(1)']},
])
def test_usage_errors_exit_2(orchestrator, kwargs):
    assert run(orchestrator, **kwargs)[0] == EXIT_USAGE


def test_computation_errors_exit_1(orchestrator):
    status, _ = run(orchestrator, subcommand='genus', variety='P3', spec='p1=1')
    assert status == EXIT_FAILED


def test_render_failed_report_shows_both_sides():
    lines = render_report(IdentityReport('demo', False, 'p1', '-p1', 'order=3'))
    assert lines == ['FAIL demo', '  lhs: p1', '  rhs: -p1', '  detail: order=3']
    assert render_report(IdentityReport('demo', True, 'x', 'x')) == ['PASS demo']


def test_verify_suite(tmp_path):
    path = tmp_path / 'small.yaml'
    path.write_text(
        "verify:\n"
        "  lagrange_max_r: 3\n"
        "  hrr_max_dimension: 3\n"
        "  milnor_max_degree: 3\n"
        "  hrrc:\n"
        "    enabled: true\n"
        "    varieties: [P2]\n"
        "    max_bundles: 2\n"
        "    degree_range: [0, 2]\n"
    )
    small = Orchestrator(config_path=str(path))
    status, output = run(small, subcommand='verify', order=5)
    lines = output.splitlines()
    assert status == EXIT_OK
    assert all(line.startswith('PASS ') for line in lines)
    assert 'PASS fgl-associativity' in lines
    assert 'PASS lagrange-inversion[r=3]' in lines
    assert 'PASS hrr[P1xP2]' in lines
    assert 'PASS hrrc[P2 O(1) O(2)]' in lines


def test_main_parses_flags(capsys):
    assert main.main(['fgl', '--order', '3']) == EXIT_OK
    assert 'a[1,1] = -p1' in capsys.readouterr().out
    assert main.main(['chern', '--variety', 'P1xP1', '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {'2': '4', '1+1': '8'}


def test_main_rejects_unknown_flags():
    with pytest.raises(SystemExit) as excinfo:
        main.main(['fgl', '--frobnicate'])
    assert excinfo.value.code == 2
