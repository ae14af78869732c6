import json

import pytest

from projquant import cli
from projquant.tensor_fields import Weights
from projquant.verification import runner


def _run(*args):
    return cli.QuantizationTool().run(list(args))


def _write_input(tmp_path, symbol, connection=None):
    payload = {
        'connection': connection or {'n': 2, 'gamma': {}},
        'symbol': symbol,
    }
    path = tmp_path / 'input.json'
    path.write_text(json.dumps(payload))
    return str(path)


_X1_SQUARED = {'delta': '0', 'deg2': {'1,1': [{'exp': [2, 0], 'coef': '1'}]}, 'deg1': [[], []]}


@pytest.mark.parametrize("n,lam,mu,expected", [
    (2, "1/2", "1/2", ["alpha=1/2 beta1=1 beta2=3/16 beta3=9/16"]),
    (2, "0", "1", ["alpha=0 beta1=1 beta2=0 beta3=0"]),
    (1, "1/2", "1/2", ["alpha=1/2"]),
    (2, "0", "4/3", [
        "alpha=0",
        "table1 case=2 lambda=0 mu=4/3 beta1=2 beta2=0 beta3=0",
        "table1 case=3 lambda=-1/3 mu=1 beta1=0 beta2=0 beta3=-1",
    ]),
    (3, "-1/4", "5/4", [
        "alpha=1/2",
        "table1 case=1 lambda=-1/4 mu=5/4 beta1=2*beta2 beta2=free beta3=-1/2",
    ]),
])
def test_format_coeffs(n, lam, mu, expected):
    assert cli.format_coeffs(n, Weights(lam, mu)) == expected


def test_format_coeffs_without_first_order():
    assert cli.format_coeffs(2, Weights(1, 2)) == ["beta1=4 beta2=6 beta3=-9"]


def test_coeffs_command(capsys):
    assert _run('coeffs', '--n', '2', '--lambda', '1/2', '--mu', '1/2') == 0
    assert capsys.readouterr().out == "alpha=1/2 beta1=1 beta2=3/16 beta3=9/16\n"


def test_coeffs_command_defaults(capsys):
    assert _run('coeffs') == 0
    assert capsys.readouterr().out.startswith("alpha=1/2 beta1=1 ")


@pytest.mark.parametrize("args", [
    ('coeffs', '--n', '0'),
    ('coeffs', '--lambda', 'half'),
    ('-c', '{"n": ', 'coeffs'),
    ('-c', '/nonexistent/config.json', 'coeffs'),
])
def test_usage_errors(args):
    assert _run(*args) == 2


def test_argument_errors():
    with pytest.raises(SystemExit) as excinfo:
        _run('verify', '--suite', 'convergence')
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit):
        _run()


def test_quantize_command(tmp_path):
    output = tmp_path / 'operator.json'
    code = _run('quantize', '--lambda', '1/2', '--mu', '1/2', '--in', _write_input(tmp_path, _X1_SQUARED),
                '--out', str(output))
    assert code == 0
    assert json.loads(output.read_text()) == {
        'lambda': '1/2',
        'mu': '1/2',
        'a2': {'1,1': [{'exp': [2, 0], 'coef': '1'}]},
        'a1': [[{'exp': [1, 0], 'coef': '2'}], []],
        'a0': [{'exp': [0, 0], 'coef': '3/8'}],
    }


def test_quantize_command_to_stdout(tmp_path, capsys):
    symbol = {'delta': '0', 'deg2': {'1,1': [{'exp': [0, 0], 'coef': '1'}]}, 'deg1': [[], []]}
    assert _run('quantize', '--in', _write_input(tmp_path, symbol)) == 0
    operator = json.loads(capsys.readouterr().out)
    assert operator['a2'] == {'1,1': [{'exp': [0, 0], 'coef': '1'}]}
    assert operator['a1'] == [[], []]
    assert operator['a0'] == []


def test_quantize_command_errors(tmp_path):
    path = _write_input(tmp_path, dict(_X1_SQUARED, delta='1'))
    assert _run('quantize', '--in', path) == 2
    resonant = _write_input(tmp_path, dict(_X1_SQUARED, delta='4/3'))
    assert _run('quantize', '--lambda', '0', '--mu', '4/3', '--in', resonant) == 2
    assert _run('quantize', '--lambda', '0', '--mu', '4/3', '--case', '2', '--in', resonant) == 0
    assert _run('quantize', '--lambda', '0', '--mu', '4/3', '--case', '3', '--in', resonant) == 2
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps({'symbol': _X1_SQUARED}))
    assert _run('quantize', '--in', str(bad)) == 2
    assert _run('quantize', '--in', str(tmp_path / 'missing.json')) == 2


def test_quantize_command_names_resonant_cases(tmp_path, caplog):
    resonant = _write_input(tmp_path, dict(_X1_SQUARED, delta='4/3'))
    assert _run('quantize', '--lambda', '0', '--mu', '4/3', '--in', resonant) == 2
    assert 'resonant-case table: case 2 (lambda=0, mu=4/3); case 3 (lambda=-1/3, mu=1)' in caplog.text


def test_verify_command(tmp_path):
    output = tmp_path / 'report.json'
    code = _run('verify', '--samples', '1', '--suite', 'table1', '--case', '1', '--beta2', '7/3',
                '--out', str(output))
    assert code == 0
    reports = json.loads(output.read_text())
    assert [report['name'] for report in reports] == ['table1_case1', 'table1_case1_off_table']
    assert all(report['passed'] and report['seed'] == 1 for report in reports)


def test_verify_command_is_reproducible(tmp_path):
    args = ('verify', '--samples', '1', '--suite', 'table1', '--case', '3', '--seed', '11')
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    assert _run(*(args + ('--out', str(first)))) == 0
    assert _run(*(args + ('--out', str(second)))) == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify_command_perturbed(tmp_path):
    output = tmp_path / 'report.json'
    code = _run('verify', '--samples', '1', '--suite', 'invariance', '--perturb', 'beta1', '--out', str(output))
    assert code == 1
    failed = [report for report in json.loads(output.read_text()) if not report['passed']]
    assert [report['name'] for report in failed] == ['invariance_q2']
    assert failed[0]['residual']['lambda'] == '1/2'


def test_verify_command_with_config(tmp_path, capsys):
    config = json.dumps({'samples': 1, 'suites': ['table1'], 'case': 2, 'seed': 4})
    assert _run('-c', config, 'verify') == 0
    reports = json.loads(capsys.readouterr().out)
    assert [report['seed'] for report in reports] == [4, 4]


def test_selftest_command(monkeypatch, capsys):
    seen = []

    def _fake_run_suites(options):
        seen.append(options)
        return [{'name': 'table1_case1', 'passed': True, 'detail': '', 'seed': options['seed']}]

    monkeypatch.setattr(runner, 'run_suites', _fake_run_suites)
    assert _run('selftest', '--samples', '3') == 0
    assert seen[0]['n'] == [2, 3]
    assert seen[0]['lambda'] == seen[0]['mu'] == '1/2'
    assert seen[0]['samples'] == 3
    assert seen[0]['suites'] == ['invariance', 'flat_reduction', 'sl_equivariance', 'table1']
    assert json.loads(capsys.readouterr().out)[0]['name'] == 'table1_case1'


def test_paths_are_checked_before_work(tmp_path, monkeypatch):
    calls = []
    monkeypatch.setattr(runner, 'run_suites', lambda options: calls.append(options) or [])
    missing = str(tmp_path / 'missing' / 'report.json')
    assert _run('verify', '--out', missing) == 2
    assert _run('selftest', '--out', missing) == 2
    assert _run('verify', '--out', str(tmp_path)) == 2
    assert calls == []
    assert _run('quantize', '--in', _write_input(tmp_path, _X1_SQUARED), '--out', missing) == 2
    assert not (tmp_path / 'missing').exists()
