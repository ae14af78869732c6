"""Projectively invariant quantization maps.

The first-order map is

    Q1(T) = T^i nabla_i + alpha nabla_i(T^i) + T^0,            alpha = lambda / (1 - delta)

and the second-order map is

    Q2(T) = T^ij nabla_i nabla_j + beta1 nabla_j T^ij nabla_i
            + beta2 nabla_i nabla_j (T^ij) + beta3 R_ij T^ij.

``evaluate`` applies the covariant formulas to a density and
``quantize_with_coeffs`` assembles their raw coordinate form. The Ricci term uses
``RICCI_CONVENTION``: with the opposite contraction the beta3 values of
``betas`` and of the resonant table do not give invariant maps.
"""

from projquant import scalar_poly
from projquant.covariant_calculus import (CovectorDensity, RicciConvention, nabla_covector_density,
                                          nabla_density, nabla_sym2, nabla_vector, ricci)
from projquant.logger import get_logger
from projquant.operators import DiffOp, op_difference, op_sum
from projquant.scalar_poly import QQ, DimensionError, poly_partial
from projquant.tensor_fields import (Density, QuantCoeffs, SymbolField, WeightError, Weights, connection_trace,
                                     symbol_split, zero_matrix, zero_vector)

logger = get_logger(__name__)

RICCI_CONVENTION = RicciConvention.CONTRACT_FOURTH


class ResonantWeight(ValueError):
    """Raised when the generic coefficient formulas have a pole at delta."""

    def __init__(self, message, delta, cases=()):
        super(ResonantWeight, self).__init__(message)
        self.delta = delta
        self.cases = tuple(cases)


class ResonantCase(object):
    """Resonant weights admitting an invariant second-order quantization.

    CASE_1: delta = (n+3)/(n+1), (lambda, mu) = (-1/(n+1), (n+2)/(n+1)), beta1 = 2 beta2, beta2 free
    CASE_2: delta = (n+2)/(n+1), (lambda, mu) = (0, (n+2)/(n+1)), betas (2, 0, 0)
    CASE_3: delta = (n+2)/(n+1), (lambda, mu) = (-1/(n+1), 1), betas (0, 0, 1/(1-n))
    """
    CASE_1 = 1
    CASE_2 = 2
    CASE_3 = 3
    ALL = (CASE_1, CASE_2, CASE_3)


def resonant_deltas(n):
    """The values of delta where the second-order coefficients have poles."""
    return (QQ(n + 2, n + 1), QQ(n + 3, n + 1))


def table1_weights(case, n):
    _check_case(case)
    m = n + 1
    if case == ResonantCase.CASE_1:
        return Weights(QQ(-1, m), QQ(n + 2, m))
    if case == ResonantCase.CASE_2:
        return Weights(0, QQ(n + 2, m))
    return Weights(QQ(-1, m), 1)


def table1_coeffs(case, n, beta2_free=0):
    """Coefficients of a resonant case; beta2_free is only read for CASE_1."""
    _check_case(case)
    _check_second_order_dimension(n)
    w = table1_weights(case, n)
    a = alpha(w)
    if case == ResonantCase.CASE_1:
        b2 = scalar_poly.to_rational(beta2_free)
        return QuantCoeffs(a, 2 * b2, b2, QQ(1, 1 - n))
    if case == ResonantCase.CASE_2:
        return QuantCoeffs(a, 2, 0, 0)
    return QuantCoeffs(a, 0, 0, QQ(1, 1 - n))


def matching_table1_cases(n, w):
    """Resonant cases sharing the weight delta of w."""
    return tuple(case for case in ResonantCase.ALL if table1_weights(case, n).delta == w.delta)


def alpha(w):
    """alpha = lambda / (1 - delta)."""
    if w.delta == 1:
        raise ResonantWeight(
            'alpha is undefined for delta=1; the modules are only isomorphic for '
            '(lambda, mu) = (0, 1), see q1_delta_one', w.delta)
    return w.lam / (1 - w.delta)


def betas(n, w):
    """beta1, beta2, beta3 of the second-order map for non-resonant delta."""
    _check_second_order_dimension(n)
    m = n + 1
    eta = 1 - w.delta
    first_pole = eta * m + 1
    second_pole = eta * m + 2
    if first_pole == 0 or second_pole == 0:
        cases = matching_table1_cases(n, w)
        raise ResonantWeight(
            'delta=%s is resonant for n=%d; use q2_resonant with a row of the resonant-case table: %s'
            % (scalar_poly.format_rational(w.delta), n, _describe_cases(n, cases)),
            w.delta, cases)
    lam = w.lam
    beta1 = (2 + 2 * lam * m) / second_pole
    beta2 = lam * m * (1 + lam * m) / (first_pole * second_pole)
    beta3 = lam * (w.mu - 1) * m * m / ((1 - n) * first_pole)
    return QuantCoeffs(alpha(w) if w.delta != 1 else None, beta1, beta2, beta3)


def evaluate(g, t, w, coeffs, phi, convention=RICCI_CONVENTION):
    """Evaluates the covariant quantization formulas on a density of weight lambda.

    The degree-2 part of t goes through the second-order formula, the rest
    through the first-order one. Constants are read from coeffs.
    """
    _check_weights(t, w)
    if phi.weight != w.lam:
        raise WeightError('Expected a density of weight %s' % scalar_poly.format_rational(w.lam))
    n = t.n
    f = phi.coefficient
    d = nabla_density(g, phi).components
    top, rest = symbol_split(t)
    value = scalar_poly.zero(n)
    if not top.is_zero():
        hessian = nabla_covector_density(g, CovectorDensity(w.lam, d))
        div_top = _contracted_divergence(g, top)
        div_div = _divergence(g, SymbolField(t.delta, zero_matrix(n), div_top, scalar_poly.zero(n)))
        curvature = ricci(g, convention).components
        m = t.deg2
        value = value + scalar_poly.poly_sum(n, (m[i][j] * hessian[i][j] for i in range(n) for j in range(n)))
        value = value + scalar_poly.poly_sum(n, (div_top[i] * d[i] for i in range(n))) * coeffs.beta1
        value = value + div_div * f * coeffs.beta2
        value = value + scalar_poly.poly_sum(
            n, (curvature[i][j] * m[i][j] for i in range(n) for j in range(n))) * f * coeffs.beta3
    if any(rest.deg1):
        value = value + scalar_poly.poly_sum(n, (t.deg1[i] * d[i] for i in range(n)))
        value = value + _divergence(g, rest) * f * coeffs.alpha
    value = value + t.deg0 * f
    return Density(w.mu, value)


def quantize_with_coeffs(g, t, w, coeffs, convention=RICCI_CONVENTION):
    """Raw coordinate form of the quantization of t with explicit constants.

    With nabla_i phi = d_i phi - lambda Gamma_i phi the covariant formulas
    expand, for symmetric T^ij, into

        a2^ij = T^ij
        a1^k  = T^k - T^ij Gamma^k_ij - 2 lambda T^kj Gamma_j + beta1 D^k
        a0    = T^ij (lambda Gamma^k_ij Gamma_k + lambda^2 Gamma_i Gamma_j - lambda d_i Gamma_j)
                - lambda (T^i + beta1 D^i) Gamma_i
                + beta2 nabla_i D^i + beta3 R_ij T^ij + alpha nabla_i T^i + T^0

    where D^i = nabla_j T^ij. Every connection and symbol quantity is
    computed once; ``evaluate`` applies the same formulas to a single density.
    """
    _check_weights(t, w)
    n = t.n
    if g.n != n:
        raise DimensionError('Dimension mismatch: connection has n=%d, symbol has n=%d' % (g.n, n))
    if t.degree() == 2:
        _check_second_order_dimension(n)
        if None in (coeffs.beta1, coeffs.beta2, coeffs.beta3):
            raise ValueError('Second-order quantization needs beta1, beta2 and beta3')
    if any(t.deg1) and coeffs.alpha is None:
        raise ValueError('First-order quantization needs alpha')
    logger.debug('Quantizing a degree-%d symbol with %r', t.degree(), coeffs)
    lam = w.lam
    trace = connection_trace(g).components
    top, rest = symbol_split(t)
    a1 = list(zero_vector(n))
    a0 = t.deg0
    if not top.is_zero():
        m = t.deg2
        div_top = _contracted_divergence(g, top)
        div_div = _divergence(g, SymbolField(t.delta, zero_matrix(n), div_top, scalar_poly.zero(n)))
        curvature = ricci(g, convention).components
        pairs = [(i, j) for i in range(n) for j in range(n)]
        for k in range(n):
            a1[k] = (div_top[k] * coeffs.beta1
                     - scalar_poly.poly_sum(n, (m[i][j] * g.gamma[k][i][j] for i, j in pairs))
                     - scalar_poly.poly_sum(n, (m[k][j] * trace[j] for j in range(n))) * (2 * lam))
        a0 = a0 + scalar_poly.poly_sum(n, (
            m[i][j] * (scalar_poly.poly_sum(n, (g.gamma[k][i][j] * trace[k] for k in range(n))) * lam
                       + trace[i] * trace[j] * (lam * lam)
                       - poly_partial(trace[j], i + 1) * lam)
            for i, j in pairs))
        a0 = a0 - scalar_poly.poly_sum(n, (div_top[i] * trace[i] for i in range(n))) * (lam * coeffs.beta1)
        a0 = a0 + div_div * coeffs.beta2
        a0 = a0 + scalar_poly.poly_sum(n, (curvature[i][j] * m[i][j] for i, j in pairs)) * coeffs.beta3
        a2 = m
    else:
        a2 = zero_matrix(n)
    if any(rest.deg1):
        a1 = [a1[k] + t.deg1[k] for k in range(n)]
        a0 = a0 - scalar_poly.poly_sum(n, (t.deg1[i] * trace[i] for i in range(n))) * lam
        a0 = a0 + _divergence(g, rest) * coeffs.alpha
    return DiffOp(w, a2, a1, a0)


def q1(g, t, w):
    """First-order map Q1 for delta != 1."""
    if t.degree() == 2:
        raise ValueError('q1 only quantizes symbols of degree <= 1')
    return quantize_with_coeffs(g, t, w, QuantCoeffs(alpha=alpha(w)))


def q1_delta_one(g, t, alpha_value=0):
    """First-order map at delta = 1, (lambda, mu) = (0, 1), with a fixed alpha (default 0)."""
    if t.degree() == 2:
        raise ValueError('q1_delta_one only quantizes symbols of degree <= 1')
    return quantize_with_coeffs(g, t, Weights(0, 1), QuantCoeffs(alpha=alpha_value))


def q2(g, t, w):
    """Second-order map Q2 for n >= 2 and non-resonant delta."""
    _check_pure_second_order(t)
    return quantize_with_coeffs(g, t, w, betas(t.n, w))


def q2_resonant(g, t, case, beta2_free=0):
    """Second-order map at the resonant weights of a resonant case."""
    _check_pure_second_order(t)
    w = table1_weights(case, t.n)
    return quantize_with_coeffs(g, t, w, table1_coeffs(case, t.n, beta2_free))


def q2_flat_oracle(t, w, coeffs=None):
    """T^ij d_i d_j + beta1 (d_j T^ij) d_i + beta2 (d_i d_j T^ij), built without connections."""
    _check_pure_second_order(t)
    _check_weights(t, w)
    n = t.n
    if coeffs is None:
        coeffs = betas(n, w)
    m = t.deg2
    a1 = [scalar_poly.poly_sum(n, (poly_partial(m[i][j], j + 1) for j in range(n))) * coeffs.beta1
          for i in range(n)]
    a0 = scalar_poly.poly_sum(
        n, (poly_partial(poly_partial(m[i][j], j + 1), i + 1) for i in range(n) for j in range(n))) * coeffs.beta2
    return DiffOp(w, m, a1, a0)


def quantize(g, t, w, case=None, beta2_free=0):
    """Quantizes each degree part of t and sums the results.

    Vanishing parts are skipped. At delta = 1 the first-order part uses
    q1_delta_one when (lambda, mu) = (0, 1); at resonant delta the
    second-order part needs a resonant case.
    """
    _check_weights(t, w)
    n = t.n
    top, rest = symbol_split(t)
    result = DiffOp.zero(n, w)
    if not top.is_zero():
        if case is None:
            result = op_sum(result, q2(g, top, w))
        else:
            if table1_weights(case, n) != w:
                raise WeightError('Weights %r do not match resonant case %d' % (w, case))
            result = op_sum(result, q2_resonant(g, top, case, beta2_free))
    if any(rest.deg1):
        if w.delta == 1:
            if w != Weights(0, 1):
                raise ResonantWeight(
                    'delta=1 first-order symbols are only quantized for (lambda, mu) = (0, 1)', w.delta)
            result = op_sum(result, q1_delta_one(g, rest))
        else:
            result = op_sum(result, q1(g, rest, w))
    elif rest.deg0:
        result = op_sum(result, DiffOp.multiplication(w, rest.deg0))
    return result


def dequantize(g, op, case=None, beta2_free=0):
    """Inverse of quantize by back-substitution from the top order down."""
    if op.order > 2:
        raise ValueError('Only operators of order <= 2 are dequantized')
    w = op.weights
    n = op.n
    zero = scalar_poly.zero(n)
    top = SymbolField(w.delta, op.a2, zero_vector(n), zero)
    remainder = op_difference(op, quantize(g, top, w, case=case, beta2_free=beta2_free))
    if remainder.order > 1:
        raise AssertionError('Second-order quantization does not preserve the principal symbol')
    first = SymbolField(w.delta, zero_matrix(n), remainder.a1, zero)
    remainder = op_difference(remainder, quantize(g, first, w, case=case, beta2_free=beta2_free))
    if remainder.order > 0:
        raise AssertionError('First-order quantization does not preserve the principal symbol')
    return SymbolField(w.delta, op.a2, first.deg1, remainder.a0)


def _divergence(g, t):
    """nabla_i T^i of the degree-1 part of t."""
    nabla = nabla_vector(g, t)
    return scalar_poly.poly_sum(t.n, (nabla[i][i] for i in range(t.n)))


def _contracted_divergence(g, t):
    """The vector density nabla_j T^ij of the degree-2 part of t."""
    nabla = nabla_sym2(g, t)
    n = t.n
    return [scalar_poly.poly_sum(n, (nabla[j][i][j] for j in range(n))) for i in range(n)]


def _check_weights(t, w):
    if t.delta != w.delta:
        raise WeightError('Symbol weight delta=%s does not match mu - lambda = %s'
                          % (scalar_poly.format_rational(t.delta), scalar_poly.format_rational(w.delta)))


def _check_pure_second_order(t):
    if any(t.deg1) or t.deg0:
        raise ValueError('Expected a pure degree-2 symbol')


def _check_second_order_dimension(n):
    if n < 2:
        raise DimensionError('Second-order quantization requires n >= 2, got n=%d' % n)


def _check_case(case):
    if case not in ResonantCase.ALL:
        raise ValueError('Unknown resonant case %r, expected one of 1, 2, 3' % (case,))


def _describe_cases(n, cases):
    rows = []
    for case in cases:
        w = table1_weights(case, n)
        rows.append('case %d (lambda=%s, mu=%s)'
                    % (case, scalar_poly.format_rational(w.lam), scalar_poly.format_rational(w.mu)))
    return '; '.join(rows)
