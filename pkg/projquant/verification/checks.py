"""Exact checks: invariance residuals, flat reduction, sl(n+1) equivariance and the resonant cases.

Every comparison is exact operator equality. A check returns a CheckReport
whose residual is the difference of the two sides; it passes iff that
residual is the zero operator.
"""

import collections

from projquant import quantization
from projquant import scalar_poly
from projquant.covariant_calculus import (RicciConvention, nabla_sym2, projective_shift,
                                          projectively_flat_connection)
from projquant.logger import get_logger
from projquant.operators import (DiffOp, lie_operator, lie_symbol, op_difference, op_to_json)
from projquant.quantization import RICCI_CONVENTION
from projquant.scalar_poly import DimensionError
from projquant.tensor_fields import (Connection, QuantCoeffs, VectorField, connection_trace, zero_matrix)
from projquant.verification.sampler import InstanceSampler

logger = get_logger(__name__)

BRACKET_MONOMIALS = (
    'div(T)^i w_i',
    'T^ij w_j nabla_i',
    'T^ij d_i w_j',
    'T^jk G^i_jk w_i',
    'T^ij w_i w_j',
)


class CheckReport(collections.namedtuple('CheckReport', ('name', 'passed', 'residual', 'detail'))):
    __slots__ = ()

    @classmethod
    def from_residual(cls, name, residual, detail=''):
        return cls(name, residual.is_zero(), residual, detail)


class EtaDelta(collections.namedtuple('EtaDelta', ('value',))):
    """eta = 1 - delta."""
    __slots__ = ()

    @classmethod
    def from_weights(cls, w):
        return cls(1 - w.delta)


class SlGenerator(collections.namedtuple('SlGenerator', ('kind', 'indices', 'as_vector_field'))):
    """A generator of the projective action of sl(n+1) on a flat chart.

    translation i:  d_i
    linear i, j:    x^i d_j
    quadratic i:    x^i x^k d_k
    """
    __slots__ = ()

    TRANSLATION = 'translation'
    LINEAR = 'linear'
    QUADRATIC = 'quadratic'

    @classmethod
    def translation(cls, n, i):
        components = [scalar_poly.one(n) if k == i else scalar_poly.zero(n) for k in range(n)]
        return cls(cls.TRANSLATION, (i,), VectorField(components))

    @classmethod
    def linear(cls, n, i, j):
        xi = scalar_poly.coordinate(n, i + 1)
        components = [xi if k == j else scalar_poly.zero(n) for k in range(n)]
        return cls(cls.LINEAR, (i, j), VectorField(components))

    @classmethod
    def quadratic(cls, n, i):
        xi = scalar_poly.coordinate(n, i + 1)
        return cls(cls.QUADRATIC, (i,), VectorField(xi * scalar_poly.coordinate(n, k + 1) for k in range(n)))

    @property
    def label(self):
        if self.kind == self.TRANSLATION:
            return 'd_%d' % (self.indices[0] + 1)
        if self.kind == self.LINEAR:
            return 'x%d d_%d' % (self.indices[0] + 1, self.indices[1] + 1)
        return 'x%d x^k d_k' % (self.indices[0] + 1)


def sl_generators(n):
    """The (n+1)^2 - 1 generators: translations, then linear, then quadratic."""
    gens = [SlGenerator.translation(n, i) for i in range(n)]
    gens.extend(SlGenerator.linear(n, i, j) for i in range(n) for j in range(n))
    gens.extend(SlGenerator.quadratic(n, i) for i in range(n))
    return gens


class BracketForm(object):
    """PRINTED evaluates the closed-form bracket expressions, DERIVED expands Q~ - Q directly."""
    PRINTED = 'printed'
    DERIVED = 'derived'

    @staticmethod
    def all():
        return (BracketForm.PRINTED, BracketForm.DERIVED)


def coeff_bracket_values(n, w, coeffs, form=BracketForm.PRINTED, convention=RICCI_CONVENTION):
    """The five coefficients of Q~(T) - Q(T) for a degree-2 symbol.

    The order follows BRACKET_MONOMIALS. ``convention`` only affects the
    DERIVED form.
    """
    if n < 2:
        raise DimensionError('Bracket values are defined for n >= 2, got n=%d' % n)
    lam = w.lam
    delta = w.delta
    eta = EtaDelta.from_weights(w).value
    m = n + 1
    b1, b2, b3 = coeffs.beta1, coeffs.beta2, coeffs.beta3
    if form == BracketForm.PRINTED:
        return (
            2 * b2 + m * (-lam * b1 + 2 * eta * b2),
            2 * b1 - 2 + m * (-2 * lam + eta * b1),
            m * (-lam + eta * b2) + 2 * b2 + (1 - n) * b3,
            m * (lam - eta * b2) - 2 * b2 + b3 * (n - 1),
            (m * m * (lam * lam + eta * (delta * b2 - lam * b1))
             + 2 * m * (lam * (1 - b1) + delta * b2)
             + (n - 1) * b3),
        )
    if form != BracketForm.DERIVED:
        raise ValueError('Unknown bracket form %r' % form)
    sign = 1 if convention == RicciConvention.CONTRACT_THIRD else -1
    big_l = lam * m
    e = eta * m
    return (
        -big_l * b1 + (2 + 2 * e) * b2,
        (2 + e) * b1 - 2 - 2 * big_l,
        -big_l + (2 + e) * b2 + sign * (1 - n) * b3,
        big_l - (2 + e) * b2 + sign * (n - 1) * b3,
        2 * big_l + big_l * big_l - big_l * (2 + e) * b1 + e * (2 + e) * b2 + sign * (n - 1) * b3,
    )


def first_order_bracket(n, w, coeffs):
    """Coefficient of T^i w_i in Q1~(T) - Q1(T): (n+1)(alpha eta - lambda)."""
    return (n + 1) * (coeffs.alpha * EtaDelta.from_weights(w).value - w.lam)


def bracket_residual(g, omega, t, w, brackets):
    """The operator sum_k brackets[k] * monomial_k for a pure degree-2 symbol.

    Monomials are built from the unshifted connection g.
    """
    if any(t.deg1) or t.deg0:
        raise ValueError('bracket_residual expects a pure degree-2 symbol')
    n = t.n
    if g.n != n or omega.n != n:
        raise DimensionError('Dimension mismatch between connection, one-form and symbol')
    b1, b2, b3, b4, b5 = (scalar_poly.to_rational(b) for b in brackets)
    w_ = omega.components
    m = t.deg2
    trace = connection_trace(g).components
    nabla = nabla_sym2(g, t)
    div = [scalar_poly.poly_sum(n, (nabla[j][i][j] for j in range(n))) for i in range(n)]
    t_omega = [scalar_poly.poly_sum(n, (m[i][j] * w_[j] for j in range(n))) for i in range(n)]

    a1 = [t_omega[i] * b2 for i in range(n)]
    a0 = scalar_poly.poly_sum(n, (div[i] * w_[i] for i in range(n))) * b1
    a0 = a0 - scalar_poly.poly_sum(n, (trace[i] * t_omega[i] for i in range(n))) * (w.lam * b2)
    a0 = a0 + scalar_poly.poly_sum(
        n, (m[i][j] * scalar_poly.poly_partial(w_[j], i + 1) for i in range(n) for j in range(n))) * b3
    a0 = a0 + scalar_poly.poly_sum(
        n, (m[j][k] * g.gamma[i][j][k] * w_[i] for i in range(n) for j in range(n) for k in range(n))) * b4
    a0 = a0 + scalar_poly.poly_sum(n, (t_omega[i] * w_[i] for i in range(n))) * b5
    return DiffOp(w, zero_matrix(n), a1, a0)


def invariance_residual(g, omega, t, w, coeffs, convention=RICCI_CONVENTION):
    """Q~(T) - Q(T) with both maps built from the same constants."""
    shifted = projective_shift(g, omega)
    return op_difference(quantization.quantize_with_coeffs(shifted, t, w, coeffs, convention),
                         quantization.quantize_with_coeffs(g, t, w, coeffs, convention))


def check_flat_reduction(theta, t, w, coeffs=None, convention=None):
    """q2 over the projectively flat connection of theta against the flat formula."""
    n = t.n
    if coeffs is None:
        coeffs = quantization.betas(n, w)
    if convention is None:
        convention = RICCI_CONVENTION
    g = projectively_flat_connection(theta)
    lhs = quantization.quantize_with_coeffs(g, t, w, coeffs, convention)
    rhs = quantization.q2_flat_oracle(t, w, coeffs)
    return CheckReport.from_residual(
        'flat_reduction', op_difference(lhs, rhs), 'n=%d %r convention=%s' % (n, w, convention))


def check_sl_equivariance(gen, t, w, coeffs=None):
    """Q(L_X T) == L_X Q(T) over the zero connection."""
    n = t.n
    if coeffs is None:
        coeffs = default_coeffs(n, w, t)
    g = Connection.zero(n)
    x = gen.as_vector_field
    lhs = quantization.quantize_with_coeffs(g, lie_symbol(x, t), w, coeffs)
    rhs = lie_operator(x, quantization.quantize_with_coeffs(g, t, w, coeffs))
    return CheckReport.from_residual(
        'sl_equivariance', op_difference(lhs, rhs), 'generator %s, n=%d %r' % (gen.label, n, w))


def check_table1(case, n, samples, seed, weights=None, beta2_free=0):
    """Invariance of the resonant quantization on random instances.

    Case 1 is run at beta2_free and at beta2_free + 1. ``weights`` replaces
    the resonant-case weights and only serves as a negative control.
    """
    w = weights if weights is not None else quantization.table1_weights(case, n)
    beta2_values = [scalar_poly.to_rational(beta2_free)]
    if case == quantization.ResonantCase.CASE_1:
        beta2_values.append(beta2_values[0] + 1)
    name = 'table1_case%d' % case
    for beta2 in beta2_values:
        coeffs = quantization.table1_coeffs(case, n, beta2)
        sampler = InstanceSampler(seed, "%s:%s" % (name, scalar_poly.format_rational(beta2)))
        for index in range(samples):
            g = sampler.connection(n)
            omega = sampler.one_form(n)
            t = sampler.symbol(n, w.delta, degrees=(2,))
            residual = invariance_residual(g, omega, t, w, coeffs)
            if not residual.is_zero():
                return CheckReport(name, False, residual, 'sample %d, beta2=%s, n=%d %r'
                                   % (index, scalar_poly.format_rational(beta2), n, w))
    values = ', '.join(scalar_poly.format_rational(b) for b in beta2_values)
    return CheckReport(name, True, None, '%d samples, beta2 in {%s}, n=%d %r' % (samples, values, n, w))


def default_coeffs(n, w, t):
    """The constants of the invariant quantization at w for the degrees present in t."""
    if t.degree() == 2:
        return quantization.betas(n, w)
    return QuantCoeffs(alpha=quantization.alpha(w))


def report_to_json(report, seed):
    payload = {
        'name': report.name,
        'passed': bool(report.passed),
        'detail': report.detail,
        'seed': seed,
    }
    if not report.passed and report.residual is not None:
        payload['residual'] = op_to_json(report.residual)
    return payload


def bracket_discrepancies(n, w, coeffs, convention=RICCI_CONVENTION):
    """Indices where the printed and derived brackets disagree, with both values."""
    printed = coeff_bracket_values(n, w, coeffs, BracketForm.PRINTED)
    derived = coeff_bracket_values(n, w, coeffs, BracketForm.DERIVED, convention)
    return [(k, p, d) for k, (p, d) in enumerate(zip(printed, derived)) if p != d]


def log_bracket_discrepancies(n, w, coeffs, convention=RICCI_CONVENTION):
    discrepancies = bracket_discrepancies(n, w, coeffs, convention)
    for k, p, d in discrepancies:
        logger.warning('Printed bracket of %s is %s, the expanded residual gives %s (n=%d %r)',
                       BRACKET_MONOMIALS[k], scalar_poly.format_rational(p),
                       scalar_poly.format_rational(d), n, w)
    return discrepancies
