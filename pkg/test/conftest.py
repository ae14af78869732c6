import pytest

from projquant import scalar_poly
from projquant.tensor_fields import Connection, SymbolField, zero_matrix, zero_vector
from projquant.verification.sampler import InstanceSampler


def x(n, i):
    return scalar_poly.coordinate(n, i)


def c(n, value):
    return scalar_poly.constant(n, value)


def pure_symbol(delta, deg2):
    """A degree-2 symbol from a (possibly partial) dict {(i, j): polynomial} with 1-based keys."""
    entries = dict(deg2)
    n = scalar_poly.dimension(next(iter(entries.values())))
    matrix = [list(row) for row in zero_matrix(n)]
    for (i, j), value in entries.items():
        matrix[i - 1][j - 1] = value
        matrix[j - 1][i - 1] = value
    return SymbolField(delta, matrix, zero_vector(n), scalar_poly.zero(n))


def single_christoffel(n, i, j, k, value):
    """A connection with Gamma^i_jk = Gamma^i_kj = value (1-based) and zeros elsewhere."""
    gamma = [[[scalar_poly.zero(n) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    gamma[i - 1][j - 1][k - 1] = value
    gamma[i - 1][k - 1][j - 1] = value
    return Connection(gamma)


@pytest.fixture
def sampler(request):
    return InstanceSampler(1, request.node.name)
