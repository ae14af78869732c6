"""Linear differential operators between densities and the Vect(M) actions.

An operator F_lambda -> F_mu is stored in raw coordinate form

    A = a3^ijk d_i d_j d_k + a2^ij d_i d_j + a1^i d_i + a0

with fully symmetric a3 and a2. Public constructors only build operators of
order <= 2; the a3 slot is workspace for compositions.
"""

import collections
import itertools
import math

import six

from projquant import config as config_util
from projquant import scalar_poly
from projquant.logger import get_logger
from projquant.scalar_poly import QQ, DimensionError, poly_partial
from projquant.tensor_fields import (Density, SymbolField, SymmetryError, VectorField, WeightError,
                                     Weights, is_symmetric2, symmetrize2, zero_array3, zero_matrix,
                                     zero_vector)

logger = get_logger(__name__)


class OrderError(ValueError):
    """Raised when an operator exceeds the order an operation supports."""


class DiffOp(collections.namedtuple('DiffOp', ('weights', 'a2', 'a1', 'a0', 'a3'))):
    __slots__ = ()

    def __new__(cls, weights, a2, a1, a0, a3=None, symmetrize=False):
        if not isinstance(weights, Weights):
            raise TypeError('DiffOp weights must be a Weights instance')
        a1 = tuple(a1)
        n = len(a1)
        if n == 0:
            raise DimensionError('An operator needs at least one coordinate')
        a2 = tuple(tuple(row) for row in a2)
        if len(a2) != n or any(len(row) != n for row in a2):
            raise DimensionError('Expected a %d x %d second-order coefficient' % (n, n))
        if symmetrize:
            a2 = symmetrize2(a2)
        elif not is_symmetric2(a2):
            raise SymmetryError('Second-order coefficients must be symmetric')
        for p in itertools.chain(a1, itertools.chain.from_iterable(a2), (a0,)):
            if scalar_poly.dimension(p) != n:
                raise DimensionError('Coefficient lives in a %d-dimensional chart, expected %d'
                                     % (scalar_poly.dimension(p), n))
        if a3 is None:
            a3 = zero_array3(n)
        elif any(entry for entry in _flatten3(a3)):
            raise SymmetryError('Third-order coefficients are composition workspace only')
        else:
            a3 = zero_array3(n)
        return super(DiffOp, cls).__new__(cls, weights, a2, a1, a0, a3)

    @classmethod
    def zero(cls, n, weights):
        return cls(weights, zero_matrix(n), zero_vector(n), scalar_poly.zero(n))

    @classmethod
    def multiplication(cls, weights, a0):
        n = scalar_poly.dimension(a0)
        return cls(weights, zero_matrix(n), zero_vector(n), a0)

    @property
    def n(self):
        return len(self.a1)

    @property
    def order(self):
        if any(_flatten3(self.a3)):
            return 3
        if any(any(row) for row in self.a2):
            return 2
        if any(self.a1):
            return 1
        return 0

    def is_zero(self):
        return self.order == 0 and not self.a0


def apply(op, phi):
    """Applies an operator to a density of weight lambda; returns a mu-density."""
    if phi.weight != op.weights.lam:
        raise WeightError('Operator expects a density of weight %s, got %s'
                          % (scalar_poly.format_rational(op.weights.lam),
                             scalar_poly.format_rational(phi.weight)))
    if phi.n != op.n:
        raise DimensionError('Dimension mismatch: operator has n=%d, density has n=%d' % (op.n, phi.n))
    n = op.n
    value = scalar_poly.poly_sum(
        n, (coef * _partial_multi(phi.coefficient, exponent)
            for exponent, coef in six.iteritems(_monomial_form(op))))
    return Density(op.weights.mu, value)


def compose(a, b):
    """The composition a o b of b: F_lambda -> F_nu and a: F_nu -> F_mu.

    Coefficients follow from the Leibniz rule
    d^alpha (f d^beta) = sum_gamma binom(alpha, gamma) (d^gamma f) d^(alpha - gamma + beta).
    The sum of the orders must not exceed 3.
    """
    if a.weights.lam != b.weights.mu:
        raise WeightError('Cannot compose: inner operator targets weight %s, outer expects %s'
                          % (scalar_poly.format_rational(b.weights.mu),
                             scalar_poly.format_rational(a.weights.lam)))
    if a.n != b.n:
        raise DimensionError('Dimension mismatch: n=%d and n=%d' % (a.n, b.n))
    if a.order + b.order > 3:
        raise OrderError('Composition of orders %d and %d exceeds order 3' % (a.order, b.order))
    n = a.n
    form_a = _monomial_form(a)
    form_b = _monomial_form(b)
    result = collections.defaultdict(lambda: scalar_poly.zero(n))
    for alpha, coef_a in six.iteritems(form_a):
        for gamma in _sub_exponents(alpha):
            weight = _multi_binomial(alpha, gamma)
            rest = tuple(x - y for x, y in zip(alpha, gamma))
            for beta, coef_b in six.iteritems(form_b):
                target = tuple(x + y for x, y in zip(rest, beta))
                term = coef_a * _partial_multi(coef_b, gamma)
                if weight != 1:
                    term = term * weight
                result[target] = result[target] + term
    weights = Weights(b.weights.lam, a.weights.mu)
    logger.debug('Composed operators of orders %d and %d', a.order, b.order)
    return _from_monomial_form(weights, n, result)


def op_sum(a, b):
    _check_same_module(a, b)
    return _combine(a, b, lambda x, y: x + y)


def op_difference(a, b):
    _check_same_module(a, b)
    return _combine(a, b, lambda x, y: x - y)


def op_scale(a, factor):
    factor = scalar_poly.to_rational(factor)
    return _map(a, lambda x: x * factor)


def from_action(action, weights, n):
    """Recovers the coordinate form of an order <= 2 operator from its action.

    ``action`` maps a Density of weight ``weights.lam`` to a Density. The
    coefficients are read off from the images of 1, x^k and x^k x^l.
    """
    def image_of(p):
        return action(Density(weights.lam, p)).coefficient

    xs = scalar_poly.polynomial_ring(n).gens
    a0 = image_of(scalar_poly.one(n))
    a1 = [image_of(xs[k]) - xs[k] * a0 for k in range(n)]
    half = QQ(1, 2)
    a2 = [[None] * n for _ in range(n)]
    for k in range(n):
        for l in range(k, n):
            value = (image_of(xs[k] * xs[l]) - a1[k] * xs[l] - a1[l] * xs[k] - xs[k] * xs[l] * a0) * half
            a2[k][l] = value
            a2[l][k] = value
    return DiffOp(weights, a2, a1, a0)


def divergence(x):
    """div X = d_i X^i."""
    return scalar_poly.poly_sum(x.n, (poly_partial(x.components[i], i + 1) for i in range(x.n)))


def lie_bracket(x, y):
    """[X, Y]^i = X^j d_j Y^i - Y^j d_j X^i."""
    n = _check_dimensions(x.n, y.n)
    return VectorField(
        scalar_poly.poly_sum(n, (x.components[j] * poly_partial(y.components[i], j + 1)
                                 - y.components[j] * poly_partial(x.components[i], j + 1)
                                 for j in range(n)))
        for i in range(n))


def directional(x, p):
    """X^k d_k p."""
    return scalar_poly.poly_sum(x.n, (x.components[k] * poly_partial(p, k + 1) for k in range(x.n)))


def lie_density(x, phi):
    """L_X phi = X^i d_i phi + lambda (d_i X^i) phi."""
    _check_dimensions(x.n, phi.n)
    return Density(phi.weight, directional(x, phi.coefficient) + divergence(x) * phi.coefficient * phi.weight)


def lie_symbol(x, t):
    """Lie derivative of a delta-weighted symbol along X, degree by degree."""
    n = _check_dimensions(x.n, t.n)
    div = divergence(x) * t.delta
    jac = [[poly_partial(x.components[i], k + 1) for k in range(n)] for i in range(n)]  # jac[i][k] = d_k X^i
    deg2 = tuple(
        tuple(directional(x, t.deg2[i][j])
              - scalar_poly.poly_sum(n, (t.deg2[k][j] * jac[i][k] for k in range(n)))
              - scalar_poly.poly_sum(n, (t.deg2[i][k] * jac[j][k] for k in range(n)))
              + div * t.deg2[i][j]
              for j in range(n))
        for i in range(n))
    deg1 = tuple(
        directional(x, t.deg1[i])
        - scalar_poly.poly_sum(n, (t.deg1[k] * jac[i][k] for k in range(n)))
        + div * t.deg1[i]
        for i in range(n))
    deg0 = directional(x, t.deg0) + div * t.deg0
    return SymbolField(t.delta, deg2, deg1, deg0)


def vector_field_operator(x, weight):
    """L^weight_X = X^i d_i + weight (d_i X^i) as an operator on densities of that weight."""
    weight = scalar_poly.to_rational(weight)
    return DiffOp(Weights(weight, weight), zero_matrix(x.n), x.components, divergence(x) * weight)


def lie_operator(x, op):
    """L_X A = L^mu_X o A - A o L^lambda_X, computed by composition."""
    _check_dimensions(x.n, op.n)
    if op.order > 2:
        raise OrderError('Lie action is defined on operators of order <= 2')
    left = compose(vector_field_operator(x, op.weights.mu), op)
    right = compose(op, vector_field_operator(x, op.weights.lam))
    result = op_difference(left, right)
    if any(_flatten3(result.a3)):
        raise AssertionError('Lie action produced a nonzero third-order term')
    return DiffOp(op.weights, result.a2, result.a1, result.a0)


def principal_symbol(op):
    """The degree-2 symbol a2^ij xi_i xi_j of weight mu - lambda."""
    if op.order > 2:
        raise OrderError('Principal symbol is defined on operators of order <= 2')
    n = op.n
    return SymbolField(op.weights.delta, op.a2, zero_vector(n), scalar_poly.zero(n))


# JSON form.

DIFFOP_SCHEMA = {
    'type': 'object',
    'properties': {
        'lambda': {'type': 'string', 'pattern': scalar_poly.RATIONAL_PATTERN},
        'mu': {'type': 'string', 'pattern': scalar_poly.RATIONAL_PATTERN},
        'a2': {
            'type': 'object',
            'patternProperties': {r'^[0-9]+,[0-9]+$': {'$ref': '#/definitions/polynomial'}},
            'additionalProperties': False,
        },
        'a1': {'type': 'array', 'items': {'$ref': '#/definitions/polynomial'}, 'minItems': 1},
        'a0': {'$ref': '#/definitions/polynomial'},
    },
    'required': ['lambda', 'mu', 'a1'],
    'additionalProperties': False,
    'definitions': {
        'polynomial': {
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
        },
    },
}


def op_to_json(op):
    if op.order > 2:
        raise OrderError('Only operators of order <= 2 are serialized')
    n = op.n
    a2 = {}
    for i in range(n):
        for j in range(n):
            if op.a2[i][j]:
                a2['%d,%d' % (i + 1, j + 1)] = scalar_poly.poly_to_json(op.a2[i][j])
    return {
        'lambda': scalar_poly.format_rational(op.weights.lam),
        'mu': scalar_poly.format_rational(op.weights.mu),
        'a2': a2,
        'a1': [scalar_poly.poly_to_json(p) for p in op.a1],
        'a0': scalar_poly.poly_to_json(op.a0),
    }


def op_from_json(payload):
    config_util.validate(payload, DIFFOP_SCHEMA, 'Operator')
    n = len(payload['a1'])
    a2 = [[scalar_poly.zero(n) for _ in range(n)] for _ in range(n)]
    for key, terms in six.iteritems(payload.get('a2', {})):
        i, j = (int(part) - 1 for part in key.split(','))
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionError('Index %s out of range for a %d-dimensional chart' % (key, n))
        a2[i][j] = scalar_poly.poly_from_json(terms, n)
    return DiffOp(
        Weights(payload['lambda'], payload['mu']),
        a2,
        [scalar_poly.poly_from_json(terms, n) for terms in payload['a1']],
        scalar_poly.poly_from_json(payload.get('a0', []), n))


# Monomial form: {exponent: coefficient} with A = sum_e c_e d^e.

def _monomial_form(op):
    n = op.n
    form = collections.defaultdict(lambda: scalar_poly.zero(n))
    if op.a0:
        form[(0,) * n] = op.a0
    for i in range(n):
        if op.a1[i]:
            form[_unit(n, (i,))] = form[_unit(n, (i,))] + op.a1[i]
    for i, j in itertools.product(range(n), repeat=2):
        if op.a2[i][j]:
            e = _unit(n, (i, j))
            form[e] = form[e] + op.a2[i][j]
    for i, j, k in itertools.product(range(n), repeat=3):
        if op.a3[i][j][k]:
            e = _unit(n, (i, j, k))
            form[e] = form[e] + op.a3[i][j][k]
    return dict(form)


def _from_monomial_form(weights, n, form):
    zero = scalar_poly.zero(n)
    a0 = form.get((0,) * n, zero)
    a1 = [form.get(_unit(n, (i,)), zero) for i in range(n)]
    a2 = [[zero] * n for _ in range(n)]
    a3 = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for exponent, coef in six.iteritems(form):
        order = sum(exponent)
        if order < 2 or not coef:
            continue
        if order > 3:
            raise OrderError('Operator of order %d cannot be represented' % order)
        share = coef * QQ(1, _multinomial(exponent))
        indices = [i for i, e in enumerate(exponent) for _ in range(e)]
        for perm in set(itertools.permutations(indices)):
            if order == 2:
                a2[perm[0]][perm[1]] = share
            else:
                a3[perm[0]][perm[1]][perm[2]] = share
    return DiffOp._make((weights,
                         tuple(tuple(row) for row in a2),
                         tuple(a1),
                         a0,
                         tuple(tuple(tuple(row) for row in block) for block in a3)))


def _combine(a, b, fn):
    n = a.n
    return DiffOp._make((
        a.weights,
        tuple(tuple(fn(a.a2[i][j], b.a2[i][j]) for j in range(n)) for i in range(n)),
        tuple(fn(a.a1[i], b.a1[i]) for i in range(n)),
        fn(a.a0, b.a0),
        tuple(tuple(tuple(fn(a.a3[i][j][k], b.a3[i][j][k]) for k in range(n)) for j in range(n))
              for i in range(n))))


def _map(a, fn):
    n = a.n
    return DiffOp._make((
        a.weights,
        tuple(tuple(fn(a.a2[i][j]) for j in range(n)) for i in range(n)),
        tuple(fn(a.a1[i]) for i in range(n)),
        fn(a.a0),
        tuple(tuple(tuple(fn(a.a3[i][j][k]) for k in range(n)) for j in range(n)) for i in range(n))))


def _unit(n, indices):
    exponent = [0] * n
    for i in indices:
        exponent[i] += 1
    return tuple(exponent)


def _partial_multi(p, exponent):
    for i, count in enumerate(exponent):
        for _ in range(count):
            p = poly_partial(p, i + 1)
    return p


def _sub_exponents(alpha):
    return itertools.product(*(range(a + 1) for a in alpha))


def _multi_binomial(alpha, gamma):
    result = 1
    for a, g in zip(alpha, gamma):
        result *= math.comb(a, g)
    return result


def _multinomial(exponent):
    result = math.factorial(sum(exponent))
    for e in exponent:
        result //= math.factorial(e)
    return result


def _flatten3(a3):
    return (entry for block in a3 for row in block for entry in row)


def _check_same_module(a, b):
    if a.weights != b.weights:
        raise WeightError('Operators act between different modules: %r and %r' % (a.weights, b.weights))
    if a.n != b.n:
        raise DimensionError('Dimension mismatch: n=%d and n=%d' % (a.n, b.n))


def _check_dimensions(a, b):
    if a != b:
        raise DimensionError('Dimension mismatch: n=%d and n=%d' % (a, b))
    return a
