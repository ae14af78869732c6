import pytest

from projquant import scalar_poly
from projquant.config import SchemaError
from projquant.covariant_calculus import CovectorDensity, projectively_flat_connection
from projquant.scalar_poly import QQ, DimensionError
from projquant.tensor_fields import (Connection, Density, OneForm, QuantCoeffs, SymbolField, SymmetryError,
                                     WeightError, Weights, connection_from_json, connection_to_json,
                                     connection_trace, is_symmetric2, one_form_from_json, symbol_from_json,
                                     symbol_scale, symbol_split, symbol_sum, symbol_to_json, symmetrize2,
                                     vector_field_from_json, zero_matrix, zero_vector)

from conftest import c, pure_symbol, single_christoffel, x


def test_weights_delta():
    w = Weights("1/2", "3/4")
    assert w.delta == QQ(1, 4)
    assert repr(w) == 'Weights(lam=1/2, mu=3/4, delta=1/4)'
    with pytest.raises(ValueError):
        Weights("1/x", 0)


def test_density_dimension():
    assert Density("1/2", x(3, 1)).n == 3


@pytest.mark.parametrize("coefficient", [5, "x1", QQ(1, 2), None])
def test_density_requires_a_polynomial(coefficient):
    with pytest.raises(TypeError):
        Density(0, coefficient)


def test_fields_require_chart_polynomials():
    with pytest.raises(TypeError):
        OneForm([1, 2])
    with pytest.raises(DimensionError):
        OneForm([x(3, 1)])
    with pytest.raises(TypeError):
        CovectorDensity(0, [x(2, 1), 0])
    with pytest.raises(DimensionError):
        CovectorDensity(0, [x(3, 1), x(3, 2)])
    assert CovectorDensity("1/2", [x(2, 1), x(2, 2)]).n == 2
    zero = scalar_poly.zero(2)
    with pytest.raises(DimensionError):
        SymbolField(0, [[x(3, 1), zero], [zero, zero]], zero_vector(2), zero)
    with pytest.raises(TypeError):
        SymbolField(0, zero_matrix(2), zero_vector(2), 0)


def test_symbol_requires_symmetric_degree_two_part():
    n = 2
    zero = scalar_poly.zero(n)
    asymmetric = [[zero, x(n, 1)], [zero, zero]]
    with pytest.raises(SymmetryError):
        SymbolField(0, asymmetric, zero_vector(n), zero)
    t = SymbolField(0, asymmetric, zero_vector(n), zero, symmetrize=True)
    assert t.deg2[0][1] == t.deg2[1][0] == x(n, 1) * QQ(1, 2)


def test_symbol_dimension_mismatch():
    with pytest.raises(DimensionError):
        SymbolField(0, zero_matrix(2), zero_vector(2), scalar_poly.zero(3))
    with pytest.raises(DimensionError):
        SymbolField(0, zero_matrix(3), zero_vector(2), scalar_poly.zero(2))


def test_symbol_degree():
    n = 2
    assert SymbolField.zero(n, 0).degree() == -1
    assert SymbolField(0, zero_matrix(n), zero_vector(n), c(n, 1)).degree() == 0
    assert SymbolField(0, zero_matrix(n), (x(n, 1), scalar_poly.zero(n)), c(n, 1)).degree() == 1
    assert pure_symbol(0, {(1, 2): c(n, 1)}).degree() == 2


def test_connection_symmetry():
    n = 2
    zero = scalar_poly.zero(n)
    gamma = [[[zero, x(n, 1)], [zero, zero]], [[zero, zero], [zero, zero]]]
    with pytest.raises(SymmetryError):
        Connection(gamma)
    assert Connection.zero(3).n == 3


def test_connection_trace():
    n = 2
    assert all(scalar_poly.is_zero(p) for p in connection_trace(Connection.zero(n)).components)
    theta = OneForm([x(n, 2) * 3, c(n, "1/2")])
    assert connection_trace(projectively_flat_connection(theta)) == theta
    g = single_christoffel(n, 1, 1, 2, x(n, 2))
    assert connection_trace(g).components == (scalar_poly.zero(n), x(n, 2))


def test_symbol_split():
    n = 2
    t = SymbolField("1/3", [[x(n, 1), c(n, 1)], [c(n, 1), scalar_poly.zero(n)]], (x(n, 2), c(n, 2)), c(n, 5))
    top, rest = symbol_split(t)
    assert top.deg2 == t.deg2 and not any(top.deg1) and not top.deg0
    assert rest.deg1 == t.deg1 and rest.deg0 == t.deg0 and rest.degree() == 1
    assert symbol_sum(top, rest) == t
    top, rest = symbol_split(SymbolField.zero(n, 0))
    assert top.is_zero() and rest.is_zero()


def test_symbol_algebra():
    n = 2
    t = pure_symbol(0, {(1, 1): x(n, 1)})
    assert symbol_scale(t, "1/2").deg2[0][0] == x(n, 1) * QQ(1, 2)
    with pytest.raises(WeightError):
        symbol_sum(t, SymbolField.zero(n, 1))


def test_symmetrize2():
    n = 2
    zero = scalar_poly.zero(n)
    one = scalar_poly.one(n)
    symmetric = ((x(n, 1), one), (one, zero))
    assert symmetrize2(symmetric) == symmetric
    assert all(not entry for row in symmetrize2(((zero, one), (-one, zero))) for entry in row)
    half = symmetrize2(((zero, one), (zero, zero)))
    assert half[0][1] == half[1][0] == c(n, "1/2")
    assert is_symmetric2(half)


def test_quant_coeffs():
    coeffs = QuantCoeffs(alpha="1/2", beta1=1, beta2="3/16", beta3="9/16")
    assert coeffs.perturbed('beta2').beta2 == QQ(19, 16)
    assert coeffs.to_json() == {'alpha': '1/2', 'beta1': '1', 'beta2': '3/16', 'beta3': '9/16'}
    with pytest.raises(ValueError):
        QuantCoeffs(alpha=0).perturbed('beta1')


def test_connection_json():
    n = 2
    g = single_christoffel(n, 2, 1, 2, x(n, 1) * QQ(2, 3))
    payload = connection_to_json(g)
    assert sorted(payload['gamma']) == ['2,1,2', '2,2,1']
    assert connection_from_json(payload) == g


def test_connection_json_requires_both_mirrors():
    payload = {'n': 2, 'gamma': {'1,1,2': [{'exp': [0, 0], 'coef': '1'}]}}
    with pytest.raises(SymmetryError):
        connection_from_json(payload)


def test_connection_json_index_out_of_range():
    payload = {'n': 2, 'gamma': {'3,1,1': [{'exp': [0, 0], 'coef': '1'}]}}
    with pytest.raises(DimensionError):
        connection_from_json(payload)


def test_connection_json_schema():
    with pytest.raises(SchemaError):
        connection_from_json({'n': 2})
    with pytest.raises(SchemaError):
        connection_from_json({'n': 2, 'gamma': {'1,1,1': [{'exp': [0, 0], 'coef': '0.5'}]}})


def test_symbol_json():
    n = 2
    t = SymbolField("-1/3", [[x(n, 1), c(n, 1)], [c(n, 1), scalar_poly.zero(n)]], (x(n, 2), c(n, 2)), c(n, 5))
    payload = symbol_to_json(t)
    assert payload['delta'] == '-1/3'
    assert sorted(payload['deg2']) == ['1,1', '1,2', '2,1']
    assert symbol_from_json(payload) == t


def test_symbol_json_defaults():
    t = symbol_from_json({'delta': '0', 'deg1': [[], []]})
    assert t.n == 2 and t.is_zero()


def test_components_json():
    payload = [[{'exp': [1, 0], 'coef': '2'}], []]
    assert one_form_from_json(payload).components == (x(2, 1) * 2, scalar_poly.zero(2))
    assert vector_field_from_json(payload).n == 2
    with pytest.raises(SchemaError):
        one_form_from_json([])
