"""Exact rationals and the polynomial ring of the coordinate chart.

Every coordinate-dependent quantity of the package (densities, symbol
entries, Christoffel symbols, vector fields) is an element of the sparse
polynomial ring QQ[x1, ..., xn] provided by sympy. Rationals are elements
of the QQ domain. Nothing here ever goes through floating point.
"""

import functools
import re

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, ring

from projquant.logger import get_logger

logger = get_logger(__name__)

RATIONAL_PATTERN = r'^[+-]?[0-9]+(/[0-9]+)?$'
_RATIONAL_RE = re.compile(r'^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$')

ARITH_KINDS = ('add', 'sub', 'mul')


class DimensionError(ValueError):
    """Raised when chart dimensions or coordinate indices do not agree."""


def parse_rational(text):
    """Parses "p/q" (or "p") text into an exact rational."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError('Invalid rational %r, expected "p/q"' % text)
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError('Invalid rational %r: zero denominator' % text)
    return QQ(numerator, denominator)


def format_rational(value):
    """Formats a rational as "p/q" in lowest terms, omitting q when it is 1."""
    value = to_rational(value)
    numerator = int(value.numerator)
    denominator = int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return '%d/%d' % (numerator, denominator)


def to_rational(value):
    """Converts an int, a "p/q" string or a domain element to a rational."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError('Booleans are not rationals')
    if isinstance(value, QQ.dtype):
        return value
    try:
        return QQ.convert(value)
    except CoercionFailed:
        raise TypeError('Cannot convert %r to an exact rational' % (value,))


@functools.lru_cache(maxsize=None)
def polynomial_ring(n):
    """Returns the ring QQ[x1, ..., xn] of the n-dimensional chart."""
    if n < 1:
        raise DimensionError('Chart dimension must be positive, got %d' % n)
    names = ','.join('x%d' % (i + 1) for i in range(n))
    return ring(names, QQ, lex)[0]


def check_polynomial(p):
    """Raises TypeError unless p is an element of a chart ring."""
    if not isinstance(p, PolyElement):
        raise TypeError('Expected a polynomial of the chart ring, got %r' % (p,))
    return p


def dimension(p):
    """Number of coordinates of the ring p lives in."""
    return p.ring.ngens


def zero(n):
    return polynomial_ring(n).zero


def one(n):
    return polynomial_ring(n).one


def constant(n, value):
    return polynomial_ring(n).ground_new(to_rational(value))


def coordinate(n, i):
    """The coordinate function x^i (1-based index)."""
    _check_index(n, i)
    return polynomial_ring(n).gens[i - 1]


def is_zero(p):
    return not p


def poly_sum(n, polys):
    """Sums an iterable of polynomials of the n-dimensional chart."""
    total = polynomial_ring(n).zero
    for p in polys:
        total = total + p
    return total


def from_terms(n, terms):
    """Builds a polynomial from a mapping of exponent tuples to rationals."""
    R = polynomial_ring(n)
    mapping = {}
    for exponent, coef in terms.items():
        exponent = tuple(int(e) for e in exponent)
        if len(exponent) != n or any(e < 0 for e in exponent):
            raise DimensionError('Invalid exponent %s for a %d-dimensional chart' % (exponent, n))
        mapping[exponent] = to_rational(coef)
    return R.from_dict(mapping)


def poly_arith(a, b, kind):
    """Exact add, sub or mul of two polynomials of the same chart."""
    if kind not in ARITH_KINDS:
        raise ValueError('Unknown arithmetic kind %r, expected one of %s' % (kind, ', '.join(ARITH_KINDS)))
    _check_same_ring(a, b)
    if kind == 'add':
        return a + b
    if kind == 'sub':
        return a - b
    return a * b


def poly_partial(p, i):
    """Formal partial derivative with respect to x^i (1-based index)."""
    _check_index(dimension(p), i)
    return p.diff(p.ring.gens[i - 1])


def poly_eval(p, point):
    """Evaluates p exactly at a point given as a sequence of n rationals."""
    n = dimension(p)
    if len(point) != n:
        raise DimensionError('Expected a point with %d coordinates, got %d' % (n, len(point)))
    values = [to_rational(v) for v in point]
    return p.ring.domain.convert(p(*values))


def poly_to_json(p):
    """Canonical JSON form: terms sorted lexicographically by exponent."""
    return [{'exp': list(exponent), 'coef': format_rational(coef)}
            for exponent, coef in sorted(p.items())]


def poly_from_json(terms, n):
    """Parses the canonical JSON form of a polynomial of the n-dimensional chart."""
    mapping = {}
    for term in terms:
        exponent = tuple(term['exp'])
        if exponent in mapping:
            raise ValueError('Duplicate exponent %s in polynomial terms' % (list(exponent),))
        mapping[exponent] = parse_rational(term['coef'])
    return from_terms(n, mapping)


def _check_index(n, i):
    if not 1 <= i <= n:
        raise DimensionError('Coordinate index %d out of range 1..%d' % (i, n))


def _check_same_ring(a, b):
    if a.ring != b.ring:
        raise DimensionError('Polynomials live in different charts (n=%d and n=%d)'
                             % (dimension(a), dimension(b)))
