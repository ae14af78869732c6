"""Weighted tensor fields on the coordinate chart and their JSON form."""

import collections

import six

from projquant import config as config_util
from projquant import scalar_poly
from projquant.scalar_poly import QQ, DimensionError
from projquant.logger import get_logger

logger = get_logger(__name__)

_HALF = QQ(1, 2)


class WeightError(ValueError):
    """Raised when density weights of combined objects do not match."""


class SymmetryError(ValueError):
    """Raised when data that must be symmetric is not."""


class Weights(collections.namedtuple('Weights', ('lam', 'mu'))):
    """The bi-weight (lambda, mu) of an operator module; delta is derived."""
    __slots__ = ()

    def __new__(cls, lam, mu):
        return super(Weights, cls).__new__(cls, scalar_poly.to_rational(lam), scalar_poly.to_rational(mu))

    @property
    def delta(self):
        return self.mu - self.lam

    def __repr__(self):
        return 'Weights(lam=%s, mu=%s, delta=%s)' % (
            scalar_poly.format_rational(self.lam),
            scalar_poly.format_rational(self.mu),
            scalar_poly.format_rational(self.delta))


class Density(collections.namedtuple('Density', ('weight', 'coefficient'))):
    """A lambda-density: its local coefficient and its weight."""
    __slots__ = ()

    def __new__(cls, weight, coefficient):
        scalar_poly.check_polynomial(coefficient)
        return super(Density, cls).__new__(cls, scalar_poly.to_rational(weight), coefficient)

    @property
    def n(self):
        return scalar_poly.dimension(self.coefficient)


class OneForm(collections.namedtuple('OneForm', ('components',))):
    __slots__ = ()

    def __new__(cls, components):
        components = tuple(components)
        check_components(components)
        return super(OneForm, cls).__new__(cls, components)

    @property
    def n(self):
        return len(self.components)


class VectorField(collections.namedtuple('VectorField', ('components',))):
    __slots__ = ()

    def __new__(cls, components):
        components = tuple(components)
        check_components(components)
        return super(VectorField, cls).__new__(cls, components)

    @property
    def n(self):
        return len(self.components)


class SymbolField(collections.namedtuple('SymbolField', ('delta', 'deg2', 'deg1', 'deg0'))):
    """A delta-weighted symbol T = T^ij xi_i xi_j + T^i xi_i + T^0.

    deg2 is stored as the full symmetric n x n matrix. Asymmetric data is
    rejected unless ``symmetrize`` is set, in which case it is replaced by
    its symmetric part.
    """
    __slots__ = ()

    def __new__(cls, delta, deg2, deg1, deg0, symmetrize=False):
        deg1 = tuple(deg1)
        check_components(deg1)
        n = len(deg1)
        deg2 = _as_matrix(deg2, n)
        for row in deg2:
            check_components(row, n)
        if symmetrize:
            deg2 = symmetrize2(deg2)
        elif not is_symmetric2(deg2):
            raise SymmetryError('Symbol degree-2 part is not symmetric')
        if scalar_poly.dimension(scalar_poly.check_polynomial(deg0)) != n:
            raise DimensionError('Symbol degree-0 part lives in a %d-dimensional chart, expected %d'
                                 % (scalar_poly.dimension(deg0), n))
        return super(SymbolField, cls).__new__(cls, scalar_poly.to_rational(delta), deg2, deg1, deg0)

    @classmethod
    def zero(cls, n, delta):
        return cls(delta, zero_matrix(n), zero_vector(n), scalar_poly.zero(n))

    @property
    def n(self):
        return len(self.deg1)

    def is_zero(self):
        return (not self.deg0
                and not any(self.deg1)
                and not any(any(row) for row in self.deg2))

    def degree(self):
        """Highest degree with a nonzero part, or -1 for the zero symbol."""
        if any(any(row) for row in self.deg2):
            return 2
        if any(self.deg1):
            return 1
        if self.deg0:
            return 0
        return -1


class Connection(collections.namedtuple('Connection', ('gamma',))):
    """A torsion-free affine connection; gamma[i][j][k] holds the Christoffel symbol of index i, j, k (0-based)."""
    __slots__ = ()

    def __new__(cls, gamma):
        gamma = tuple(gamma)
        n = len(gamma)
        if n == 0:
            raise DimensionError('A connection needs at least one coordinate')
        gamma = tuple(_as_matrix(block, n) for block in gamma)
        for block in gamma:
            for row in block:
                check_components(row, n)
            if not is_symmetric2(block):
                raise SymmetryError('Christoffel symbols must be symmetric in the lower indices')
        return super(Connection, cls).__new__(cls, gamma)

    @classmethod
    def zero(cls, n):
        return cls(zero_array3(n))

    @property
    def n(self):
        return len(self.gamma)


class QuantCoeffs(collections.namedtuple('QuantCoeffs', ('alpha', 'beta1', 'beta2', 'beta3'))):
    """Quantization constants; absent values are None."""
    __slots__ = ()

    def __new__(cls, alpha=None, beta1=None, beta2=None, beta3=None):
        return super(QuantCoeffs, cls).__new__(
            cls, *(None if value is None else scalar_poly.to_rational(value)
                   for value in (alpha, beta1, beta2, beta3)))

    def perturbed(self, field, amount=1):
        """Returns a copy with one field shifted by ``amount``."""
        value = getattr(self, field)
        if value is None:
            raise ValueError('Cannot perturb absent coefficient %s' % field)
        return self._replace(**{field: value + scalar_poly.to_rational(amount)})

    def to_json(self):
        return {name: scalar_poly.format_rational(value)
                for name, value in six.iteritems(self._asdict()) if value is not None}


def zero_vector(n):
    return tuple(scalar_poly.zero(n) for _ in range(n))


def zero_matrix(n):
    return tuple(zero_vector(n) for _ in range(n))


def zero_array3(n):
    return tuple(zero_matrix(n) for _ in range(n))


def is_symmetric2(m):
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def symmetrize2(m):
    """Returns the symmetric part (m + m^T) / 2 of a square matrix."""
    n = len(m)
    return tuple(tuple((m[i][j] + m[j][i]) * _HALF for j in range(n)) for i in range(n))


def connection_trace(g):
    """The one-form Gamma_i = sum_l Gamma^l_il."""
    n = g.n
    return OneForm(scalar_poly.poly_sum(n, (g.gamma[l][i][l] for l in range(n))) for i in range(n))


def symbol_split(t):
    """Splits a symbol into its degree-2 part and its degree-<=1 part."""
    n = t.n
    top = SymbolField(t.delta, t.deg2, zero_vector(n), scalar_poly.zero(n))
    rest = SymbolField(t.delta, zero_matrix(n), t.deg1, t.deg0)
    return top, rest


def symbol_sum(a, b):
    if a.delta != b.delta:
        raise WeightError('Cannot add symbols of weights %s and %s'
                          % (scalar_poly.format_rational(a.delta), scalar_poly.format_rational(b.delta)))
    n = _same_n(a.n, b.n)
    return SymbolField(
        a.delta,
        tuple(tuple(a.deg2[i][j] + b.deg2[i][j] for j in range(n)) for i in range(n)),
        tuple(a.deg1[i] + b.deg1[i] for i in range(n)),
        a.deg0 + b.deg0)


def symbol_scale(t, factor):
    factor = scalar_poly.to_rational(factor)
    return SymbolField(
        t.delta,
        tuple(tuple(entry * factor for entry in row) for row in t.deg2),
        tuple(entry * factor for entry in t.deg1),
        t.deg0 * factor)


# JSON forms.

POLYNOMIAL_SCHEMA = {
    'type': 'array',
    'items': {
        'type': 'object',
        'properties': {
            'exp': {'type': 'array', 'items': {'type': 'integer', 'minimum': 0}},
            'coef': {'type': 'string', 'pattern': scalar_poly.RATIONAL_PATTERN},
        },
        'required': ['exp', 'coef'],
        'additionalProperties': False,
    },
}

RATIONAL_SCHEMA = {'type': 'string', 'pattern': scalar_poly.RATIONAL_PATTERN}

COMPONENTS_SCHEMA = {'type': 'array', 'items': POLYNOMIAL_SCHEMA, 'minItems': 1}

CONNECTION_SCHEMA = {
    'type': 'object',
    'properties': {
        'n': {'type': 'integer', 'minimum': 1},
        'gamma': {
            'type': 'object',
            'patternProperties': {r'^[0-9]+,[0-9]+,[0-9]+$': POLYNOMIAL_SCHEMA},
            'additionalProperties': False,
        },
    },
    'required': ['n', 'gamma'],
    'additionalProperties': False,
}

SYMBOL_SCHEMA = {
    'type': 'object',
    'properties': {
        'delta': RATIONAL_SCHEMA,
        'deg2': {
            'type': 'object',
            'patternProperties': {r'^[0-9]+,[0-9]+$': POLYNOMIAL_SCHEMA},
            'additionalProperties': False,
        },
        'deg1': COMPONENTS_SCHEMA,
        'deg0': POLYNOMIAL_SCHEMA,
    },
    'required': ['delta', 'deg1'],
    'additionalProperties': False,
}


def connection_to_json(g):
    n = g.n
    gamma = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                entry = g.gamma[i][j][k]
                if entry:
                    gamma['%d,%d,%d' % (i + 1, j + 1, k + 1)] = scalar_poly.poly_to_json(entry)
    return {'n': n, 'gamma': gamma}


def connection_from_json(payload):
    config_util.validate(payload, CONNECTION_SCHEMA, 'Connection')
    n = payload['n']
    gamma = [[[scalar_poly.zero(n) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for key, terms in six.iteritems(payload['gamma']):
        i, j, k = _parse_key(key, n)
        gamma[i][j][k] = scalar_poly.poly_from_json(terms, n)
    return Connection(gamma)


def symbol_to_json(t):
    n = t.n
    deg2 = {}
    for i in range(n):
        for j in range(n):
            if t.deg2[i][j]:
                deg2['%d,%d' % (i + 1, j + 1)] = scalar_poly.poly_to_json(t.deg2[i][j])
    return {
        'delta': scalar_poly.format_rational(t.delta),
        'deg2': deg2,
        'deg1': [scalar_poly.poly_to_json(p) for p in t.deg1],
        'deg0': scalar_poly.poly_to_json(t.deg0),
    }


def symbol_from_json(payload):
    config_util.validate(payload, SYMBOL_SCHEMA, 'Symbol')
    n = len(payload['deg1'])
    deg2 = [[scalar_poly.zero(n) for _ in range(n)] for _ in range(n)]
    for key, terms in six.iteritems(payload.get('deg2', {})):
        i, j = _parse_key(key, n)
        deg2[i][j] = scalar_poly.poly_from_json(terms, n)
    return SymbolField(
        scalar_poly.parse_rational(payload['delta']),
        deg2,
        [scalar_poly.poly_from_json(terms, n) for terms in payload['deg1']],
        scalar_poly.poly_from_json(payload.get('deg0', []), n))


def one_form_from_json(payload):
    config_util.validate(payload, COMPONENTS_SCHEMA, 'One-form')
    n = len(payload)
    return OneForm(scalar_poly.poly_from_json(terms, n) for terms in payload)


def vector_field_from_json(payload):
    config_util.validate(payload, COMPONENTS_SCHEMA, 'Vector field')
    n = len(payload)
    return VectorField(scalar_poly.poly_from_json(terms, n) for terms in payload)


def _parse_key(key, n):
    indices = tuple(int(part) - 1 for part in key.split(','))
    if any(not 0 <= index < n for index in indices):
        raise DimensionError('Index %s out of range for a %d-dimensional chart' % (key, n))
    return indices


def _as_matrix(m, n):
    m = tuple(tuple(row) for row in m)
    if len(m) != n or any(len(row) != n for row in m):
        raise DimensionError('Expected a %d x %d matrix' % (n, n))
    return m


def check_components(components, n=None):
    if n is None:
        n = len(components)
    if n == 0:
        raise DimensionError('A field needs at least one component')
    if len(components) != n:
        raise DimensionError('Expected %d components, got %d' % (n, len(components)))
    for p in components:
        scalar_poly.check_polynomial(p)
        if scalar_poly.dimension(p) != n:
            raise DimensionError('Component lives in a %d-dimensional chart, expected %d'
                                 % (scalar_poly.dimension(p), n))


def _same_n(a, b):
    if a != b:
        raise DimensionError('Dimension mismatch: %d and %d' % (a, b))
    return a
