"""Functions to manipulate and validate configurations and payloads."""

import copy

import jsonschema
import six

from projquant.scalar_poly import RATIONAL_PATTERN

SUITE_NAMES = ('invariance', 'flat_reduction', 'sl_equivariance', 'table1')
PERTURBABLE = ('beta1', 'beta2', 'beta3')

DEFAULT_OPTIONS = {
    'n': 2,
    'lambda': '1/2',
    'mu': '1/2',
    'seed': 1,
    'samples': 20,
    'suites': list(SUITE_NAMES),
    'case': None,
    'beta2': '0',
    'perturb': None,
}

_RATIONAL = {'type': 'string', 'pattern': RATIONAL_PATTERN}

OPTIONS_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'type': 'object',
    'properties': {
        'n': {'type': 'integer', 'minimum': 1},
        'lambda': _RATIONAL,
        'mu': _RATIONAL,
        'seed': {'type': 'integer'},
        'samples': {'type': 'integer', 'minimum': 1},
        'suites': {
            'type': 'array',
            'items': {'type': 'string', 'enum': list(SUITE_NAMES)},
            'minItems': 1,
            'uniqueItems': True,
        },
        'case': {'type': ['integer', 'null'], 'enum': [1, 2, 3, None]},
        'beta2': _RATIONAL,
        'perturb': {'type': ['string', 'null'], 'enum': list(PERTURBABLE) + [None]},
    },
    'additionalProperties': False,
}


class SchemaError(ValueError):
    """Raised when a configuration or a payload does not follow its schema."""


def merge_config(a, b):
    """Merges config b in a."""
    for key, b_value in six.iteritems(b):
        if not isinstance(b_value, dict):
            a[key] = b_value
        else:
            a_value = a.get(key)
            if a_value is not None and isinstance(a_value, dict):
                merge_config(a_value, b_value)
            else:
                a[key] = b_value
    return a


def validate(payload, schema, what):
    """Validates payload against a JSON schema, raising SchemaError."""
    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as e:
        raise SchemaError('%s validation error: %s' % (what, e.message))
    return payload


def read_options(*configs):
    """Merges configurations on top of the defaults and validates the result."""
    jsonschema.Draft7Validator.check_schema(OPTIONS_SCHEMA)
    options = copy.deepcopy(DEFAULT_OPTIONS)
    for config in configs:
        if config:
            merge_config(options, {k: v for k, v in six.iteritems(config) if v is not None})
    return validate(options, OPTIONS_SCHEMA, 'Options')
