import io
import json

import pytest

from projquant import config
from projquant import utility


def test_merge_config():
    a = {"a": 1, "b": {"c": 2, "d": {"e": 3}}, "f": [1]}
    b = {"b": {"d": {"e": 4, "g": 5}}, "f": [2, 3], "h": None}
    assert config.merge_config(a, b) == {
        "a": 1, "b": {"c": 2, "d": {"e": 4, "g": 5}}, "f": [2, 3], "h": None}


def test_merge_config_replaces_non_dict_values():
    assert config.merge_config({"a": 1}, {"a": {"b": 2}}) == {"a": {"b": 2}}


def test_read_options_defaults():
    options = config.read_options()
    assert options == config.DEFAULT_OPTIONS
    assert options is not config.DEFAULT_OPTIONS
    options['suites'].append('table1')
    assert config.DEFAULT_OPTIONS['suites'] == list(config.SUITE_NAMES)


def test_read_options_layers():
    options = config.read_options({"n": 3, "seed": 7}, None, {"seed": 9, "lambda": None, "mu": "-2/3"})
    assert options['n'] == 3
    assert options['seed'] == 9
    assert options['lambda'] == '1/2'
    assert options['mu'] == '-2/3'


@pytest.mark.parametrize("override", [
    {"n": 0},
    {"lambda": "0.5"},
    {"samples": 0},
    {"suites": []},
    {"suites": ["invariance", "invariance"]},
    {"suites": ["convergence"]},
    {"case": 4},
    {"perturb": "alpha"},
    {"workers": 2},
])
def test_read_options_rejects(override):
    with pytest.raises(config.SchemaError) as excinfo:
        config.read_options(override)
    assert str(excinfo.value).startswith('Options validation error')


def test_validate_returns_payload():
    schema = {"type": "object", "required": ["x"]}
    payload = {"x": 1}
    assert config.validate(payload, schema, 'Thing') is payload
    with pytest.raises(config.SchemaError):
        config.validate({}, schema, 'Thing')


def test_load_config_from_string():
    assert utility.load_config('{"n": 3}') == {"n": 3}


def test_load_config_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"samples": 4}))
    assert utility.load_config(str(path)) == {"samples": 4}


def test_load_config_from_stdin(monkeypatch):
    monkeypatch.setattr('sys.stdin', io.StringIO('{"seed": 5}'))
    assert utility.load_config('-') == {"seed": 5}
