"""Covariant derivatives of weighted fields, projective changes and the Ricci tensor.

All results are returned in plain 0-based nested tuples:
``nabla_covector_density`` as [i][j] = nabla_i theta_j,
``nabla_vector`` as [j][i] = nabla_j T^i and
``nabla_sym2`` as [k][i][j] = nabla_k T^ij (derivative index first).
"""

import collections

from projquant import scalar_poly
from projquant.logger import get_logger
from projquant.scalar_poly import QQ, DimensionError, poly_partial
from projquant.tensor_fields import Connection, OneForm, check_components, connection_trace

logger = get_logger(__name__)


class CovectorDensity(collections.namedtuple('CovectorDensity', ('weight', 'components'))):
    """A one-form with values in lambda-densities, such as nabla phi."""
    __slots__ = ()

    def __new__(cls, weight, components):
        components = tuple(components)
        check_components(components)
        return super(CovectorDensity, cls).__new__(cls, scalar_poly.to_rational(weight), components)

    @property
    def n(self):
        return len(self.components)


class RicciTensor(collections.namedtuple('RicciTensor', ('components',))):
    __slots__ = ()

    def __new__(cls, components):
        return super(RicciTensor, cls).__new__(cls, tuple(tuple(row) for row in components))

    @property
    def n(self):
        return len(self.components)

    def is_symmetric(self):
        n = self.n
        return all(self.components[i][j] == self.components[j][i]
                   for i in range(n) for j in range(i + 1, n))


class RicciConvention(object):
    """The two standard contractions of the curvature tensor.

    CONTRACT_THIRD:  R_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj
    CONTRACT_FOURTH: the same expression with the opposite sign.
    """
    CONTRACT_THIRD = 'contract_third'
    CONTRACT_FOURTH = 'contract_fourth'

    @staticmethod
    def all():
        return (RicciConvention.CONTRACT_THIRD, RicciConvention.CONTRACT_FOURTH)


def nabla_density(g, phi):
    """nabla_i phi = d_i phi - lambda Gamma_i phi."""
    n = _check_dimensions(g.n, phi.n)
    trace = connection_trace(g).components
    lam = phi.weight
    f = phi.coefficient
    return CovectorDensity(lam, (poly_partial(f, i + 1) - trace[i] * f * lam for i in range(n)))


def nabla_covector_density(g, theta):
    """nabla_i theta_j = d_i theta_j - Gamma^k_ij theta_k - lambda Gamma_i theta_j."""
    n = _check_dimensions(g.n, theta.n)
    trace = connection_trace(g).components
    lam = theta.weight
    th = theta.components
    return tuple(
        tuple(poly_partial(th[j], i + 1)
              - scalar_poly.poly_sum(n, (g.gamma[k][i][j] * th[k] for k in range(n)))
              - trace[i] * th[j] * lam
              for j in range(n))
        for i in range(n))


def nabla_vector(g, t):
    """nabla_j T^i = d_j T^i + Gamma^i_jl T^l - delta Gamma_j T^i, for the degree-1 part of t."""
    n = _check_dimensions(g.n, t.n)
    trace = connection_trace(g).components
    delta = t.delta
    v = t.deg1
    return tuple(
        tuple(poly_partial(v[i], j + 1)
              + scalar_poly.poly_sum(n, (g.gamma[i][j][l] * v[l] for l in range(n)))
              - trace[j] * v[i] * delta
              for i in range(n))
        for j in range(n))


def nabla_sym2(g, t):
    """nabla_k T^ij = d_k T^ij + Gamma^i_lk T^lj + Gamma^j_lk T^il - delta Gamma_k T^ij."""
    n = _check_dimensions(g.n, t.n)
    trace = connection_trace(g).components
    delta = t.delta
    m = t.deg2
    return tuple(
        tuple(
            tuple(poly_partial(m[i][j], k + 1)
                  + scalar_poly.poly_sum(n, (g.gamma[i][l][k] * m[l][j] for l in range(n)))
                  + scalar_poly.poly_sum(n, (g.gamma[j][l][k] * m[i][l] for l in range(n)))
                  - trace[k] * m[i][j] * delta
                  for j in range(n))
            for i in range(n))
        for k in range(n))


def projective_shift(g, omega):
    """The projectively equivalent connection Gamma^i_jk + delta^i_j w_k + delta^i_k w_j."""
    n = _check_dimensions(g.n, omega.n)
    w = omega.components
    return Connection(
        tuple(
            tuple(
                tuple(g.gamma[i][j][k]
                      + (w[k] if i == j else scalar_poly.zero(n))
                      + (w[j] if i == k else scalar_poly.zero(n))
                      for k in range(n))
                for j in range(n))
            for i in range(n)))


def projectively_flat_connection(theta):
    """Gamma^i_jk = (delta^i_j theta_k + delta^i_k theta_j) / (n + 1)."""
    n = theta.n
    scale = QQ(1, n + 1)
    th = theta.components
    zero = scalar_poly.zero(n)
    return Connection(
        tuple(
            tuple(
                tuple(((th[k] if i == j else zero) + (th[j] if i == k else zero)) * scale
                      for k in range(n))
                for j in range(n))
            for i in range(n)))


def ricci(g, convention=RicciConvention.CONTRACT_THIRD):
    """Ricci tensor of a torsion-free connection under the given contraction."""
    n = g.n
    if n < 2:
        raise DimensionError('The Ricci tensor is only used for n >= 2, got n=%d' % n)
    if convention not in RicciConvention.all():
        raise ValueError('Unknown Ricci convention %r' % convention)
    gamma = g.gamma
    trace = connection_trace(g).components
    components = []
    for i in range(n):
        row = []
        for j in range(n):
            value = (scalar_poly.poly_sum(n, (poly_partial(gamma[k][i][j], k + 1) for k in range(n)))
                     - poly_partial(trace[j], i + 1)
                     + scalar_poly.poly_sum(n, (trace[l] * gamma[l][i][j] for l in range(n)))
                     - scalar_poly.poly_sum(n, (gamma[k][i][l] * gamma[l][k][j]
                                                for k in range(n) for l in range(n))))
            if convention == RicciConvention.CONTRACT_FOURTH:
                value = -value
            row.append(value)
        components.append(row)
    return RicciTensor(components)


def closed_one_form(potential):
    """The exact one-form d(potential)."""
    n = scalar_poly.dimension(potential)
    return OneForm(poly_partial(potential, i + 1) for i in range(n))


def _check_dimensions(a, b):
    if a != b:
        raise DimensionError('Dimension mismatch: connection has n=%d, field has n=%d' % (a, b))
    return a
