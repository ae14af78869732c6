import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from projquant import scalar_poly
from projquant.scalar_poly import QQ, DimensionError

from conftest import c, x


def polynomials(n, max_degree=2):
    exponents = st.tuples(*[st.integers(min_value=0, max_value=max_degree)] * n)
    coefficients = st.builds(QQ, st.integers(min_value=-9, max_value=9), st.sampled_from([1, 2, 3]))
    return st.dictionaries(exponents, coefficients, max_size=5).map(
        lambda terms: scalar_poly.from_terms(n, terms))


def test_parse_rational():
    assert scalar_poly.parse_rational("3/4") == QQ(3, 4)
    assert scalar_poly.parse_rational("-2") == QQ(-2)
    assert scalar_poly.parse_rational(" 6/8 ") == QQ(3, 4)


@pytest.mark.parametrize("text", ["", "1/0", "0.5", "a/b", "1//2"])
def test_parse_rational_invalid(text):
    with pytest.raises(ValueError):
        scalar_poly.parse_rational(text)


@pytest.mark.parametrize("value,expected", [
    (QQ(3, 16), "3/16"),
    (QQ(-9, 8), "-9/8"),
    (QQ(4, 2), "2"),
    (0, "0"),
    ("10/4", "5/2"),
])
def test_format_rational(value, expected):
    assert scalar_poly.format_rational(value) == expected


def test_to_rational_rejects_booleans():
    with pytest.raises(TypeError):
        scalar_poly.to_rational(True)


def test_poly_arith_examples():
    n = 2
    one = scalar_poly.one(n)
    product = scalar_poly.poly_arith(x(n, 1) + one, x(n, 1) - one, 'mul')
    assert product == x(n, 1) ** 2 - one
    half_x2 = x(n, 2) * QQ(1, 2)
    assert scalar_poly.is_zero(scalar_poly.poly_arith(half_x2, half_x2, 'sub'))
    assert scalar_poly.poly_to_json(scalar_poly.poly_arith(half_x2, half_x2, 'sub')) == []


def test_poly_arith_errors():
    with pytest.raises(DimensionError):
        scalar_poly.poly_arith(x(2, 1), x(3, 1), 'add')
    with pytest.raises(ValueError):
        scalar_poly.poly_arith(x(2, 1), x(2, 1), 'div')


def test_poly_partial():
    n = 2
    assert scalar_poly.poly_partial(x(n, 1) ** 2 * x(n, 2), 1) == x(n, 1) * x(n, 2) * 2
    assert scalar_poly.is_zero(scalar_poly.poly_partial(x(n, 1), 2))
    with pytest.raises(DimensionError):
        scalar_poly.poly_partial(x(n, 1), 3)
    with pytest.raises(DimensionError):
        scalar_poly.poly_partial(x(n, 1), 0)


def test_poly_eval():
    n = 2
    assert scalar_poly.poly_eval(x(n, 1) ** 2 + x(n, 2), (2, 3)) == 7
    assert scalar_poly.poly_eval(scalar_poly.zero(n), ("1/2", 5)) == 0
    assert scalar_poly.poly_eval(x(n, 1) * QQ(1, 3), ("3/2", 0)) == QQ(1, 2)
    with pytest.raises(DimensionError):
        scalar_poly.poly_eval(x(n, 1), (1,))


def test_coordinate_index_is_one_based():
    with pytest.raises(DimensionError):
        scalar_poly.coordinate(2, 0)
    assert scalar_poly.poly_eval(scalar_poly.coordinate(3, 3), (1, 2, 5)) == 5


def test_polynomial_ring_is_shared():
    assert scalar_poly.polynomial_ring(3) is scalar_poly.polynomial_ring(3)
    with pytest.raises(DimensionError):
        scalar_poly.polynomial_ring(0)


def test_from_terms_drops_zero_coefficients():
    p = scalar_poly.from_terms(2, {(1, 0): 0, (0, 2): "2/3"})
    assert scalar_poly.poly_to_json(p) == [{'exp': [0, 2], 'coef': '2/3'}]
    with pytest.raises(DimensionError):
        scalar_poly.from_terms(2, {(1,): 1})


def test_json_form_is_sorted():
    n = 2
    p = x(n, 2) + x(n, 1) ** 2 * 3 + c(n, "-1/2")
    assert scalar_poly.poly_to_json(p) == [
        {'exp': [0, 0], 'coef': '-1/2'},
        {'exp': [0, 1], 'coef': '1'},
        {'exp': [2, 0], 'coef': '3'},
    ]
    assert scalar_poly.poly_from_json(scalar_poly.poly_to_json(p), n) == p


def test_json_form_rejects_duplicate_exponents():
    terms = [{'exp': [1, 0], 'coef': '1'}, {'exp': [1, 0], 'coef': '2'}]
    with pytest.raises(ValueError):
        scalar_poly.poly_from_json(terms, 2)


@settings(max_examples=50, deadline=None)
@given(polynomials(2), polynomials(2), polynomials(2))
def test_ring_axioms(a, b, d):
    assert scalar_poly.poly_arith(a, b, 'add') == scalar_poly.poly_arith(b, a, 'add')
    assert scalar_poly.poly_arith(a, b, 'mul') == scalar_poly.poly_arith(b, a, 'mul')
    assert (a + b) + d == a + (b + d)
    assert a * (b + d) == a * b + a * d
    assert scalar_poly.is_zero(scalar_poly.poly_arith(a, a, 'sub'))
    assert scalar_poly.poly_arith(a, scalar_poly.zero(2), 'add') == a


@settings(max_examples=50, deadline=None)
@given(polynomials(2), polynomials(2), st.sampled_from([1, 2]))
def test_leibniz_rule(a, b, i):
    lhs = scalar_poly.poly_partial(a * b, i)
    rhs = scalar_poly.poly_partial(a, i) * b + a * scalar_poly.poly_partial(b, i)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(polynomials(3))
def test_partials_commute(p):
    assert (scalar_poly.poly_partial(scalar_poly.poly_partial(p, 1), 3)
            == scalar_poly.poly_partial(scalar_poly.poly_partial(p, 3), 1))


@settings(max_examples=50, deadline=None)
@given(polynomials(2), polynomials(2))
def test_evaluation_is_a_ring_morphism(a, b):
    point = (QQ(1, 2), QQ(-3))
    assert scalar_poly.poly_eval(a * b, point) == scalar_poly.poly_eval(a, point) * scalar_poly.poly_eval(b, point)
    assert scalar_poly.poly_eval(a + b, point) == scalar_poly.poly_eval(a, point) + scalar_poly.poly_eval(b, point)


@settings(max_examples=50, deadline=None)
@given(polynomials(2))
def test_canonical_form(p):
    terms = scalar_poly.poly_to_json(p)
    assert all(term['coef'] != '0' for term in terms)
    assert [term['exp'] for term in terms] == sorted(term['exp'] for term in terms)
    assert scalar_poly.poly_from_json(terms, 2) == p
