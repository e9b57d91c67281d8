from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specjump.errors import FactorDegreeExceeded, PolynomialSyntaxError
from specjump.exact import (
    INFINITY,
    SparsePoly2,
    UniPoly,
    format_rational,
    irreducible_factors,
    order_at_origin,
    parse_poly,
    poly_gcd,
    rational_roots,
    squarefree_parts,
    squarefree_split,
    substitute,
)

x, y = SparsePoly2.x(), SparsePoly2.y()


def P(text):
    return parse_poly(text)


def U(*coeffs):
    return UniPoly(coeffs)


# -- parsing ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^2 + y^3", x**2 + y**3),
        ("(1/2)*x*y^4 - y^7", x * y**4 * Fraction(1, 2) - y**7),
        ("  x * y ", x * y),
        ("-x + 3", 3 - x),
        ("(x+y)^2", x * x + 2 * x * y + y * y),
        ("x**3", x**3),
        ("2/4*x", x * Fraction(1, 2)),
        ("x - -y", x + y),
    ],
)
def test_parse(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("text, position", [("x^2 +", 5), ("x + z", 4), ("x / y", 2), ("(x + y", 6), ("x^y", 2)])
def test_parse_errors_report_position(text, position):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly(text)
    assert info.value.position == position


def test_str_round_trips_through_parser():
    p = P("(1/2)*x*y^4 - y^7 + 3 - x^2")
    assert parse_poly(str(p)) == p


def test_format_rational():
    assert format_rational(Fraction(10, 4)) == "5/2"
    assert format_rational(Fraction(-3, 1)) == "-3"


def test_zero_coefficients_never_stored():
    p = x + y - x
    assert p.terms == {(0, 1): 1}
    assert (x - x).is_zero()


# -- order_at_origin / substitute -----------------------------------------


@pytest.mark.parametrize("text, order", [("x^2 + y^3", 2), ("x*y", 2), ("1 + x", 0)])
def test_order_at_origin(text, order):
    assert order_at_origin(P(text)) == order


def test_order_of_zero_is_infinite():
    assert order_at_origin(SparsePoly2()) == INFINITY


def test_substitute_examples():
    u, v = x, y  # chart variables share the two slots
    assert substitute(P("x^2 + y^3"), u, u * v) == u**2 * (1 + u * v**3)
    assert substitute(P("x*y"), u, u * v) == u**2 * v
    p = P("3*x^4*y - (2/7)*y^2 + 1")
    assert substitute(p, x, y) == p


small_coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), small_coeff, max_size=5
).map(SparsePoly2)
points = st.tuples(small_coeff, small_coeff)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_order_is_additive(p, q):
    assert order_at_origin(p * q) == order_at_origin(p) + order_at_origin(q)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys, polys, points)
def test_substitute_is_a_ring_homomorphism(p, q, a, b, pt):
    assert substitute(p + q, a, b) == substitute(p, a, b) + substitute(q, a, b)
    assert substitute(p * q, a, b) == substitute(p, a, b) * substitute(q, a, b)
    # composing evaluations
    assert substitute(p, a, b).evaluate(*pt) == p.evaluate(a.evaluate(*pt), b.evaluate(*pt))


# -- univariate ------------------------------------------------------------


def test_squarefree_split_perfect_square():
    assert squarefree_split(U(1, -2, 1)) == [(U(-1, 1), 2, [1])]


def test_squarefree_split_v3_plus_1():
    [(factor, mult, degrees)] = squarefree_split(U(1, 0, 0, 1))
    assert mult == 1 and sorted(degrees) == [1, 2]
    # independent check: v + 1 divides exactly, and the quadratic cofactor
    # has negative discriminant, so it has no real (hence no rational) root
    quotient, remainder = factor.divmod(U(1, 1))
    assert not remainder
    assert quotient == U(1, -1, 1)
    assert quotient.discriminant_sign() == -1


def test_squarefree_split_v():
    assert squarefree_split(U(0, 1)) == [(U(0, 1), 1, [1])]


def test_squarefree_split_mixed_multiplicities():
    q = UniPoly.from_roots([1, 1, 1, 2, 2, 3]) * U(1, 0, 1) * 5
    parts = {mult: (f, d) for f, mult, d in squarefree_split(q)}
    assert parts[3] == (U(-1, 1), [1])
    assert parts[2] == (U(-2, 1), [1])
    assert parts[1][0] == U(-3, 1) * U(1, 0, 1)
    assert sorted(parts[1][1]) == [1, 2]


def test_zero_input_rejected():
    with pytest.raises(ValueError):
        squarefree_split(UniPoly())
    with pytest.raises(ValueError):
        rational_roots(UniPoly())


def test_factor_degree_cap():
    with pytest.raises(FactorDegreeExceeded):
        squarefree_split(UniPoly([1] + [0] * 16 + [1]))
    with pytest.raises(FactorDegreeExceeded):
        squarefree_split(U(1, 0, 0, 1), max_degree=2)


@pytest.mark.parametrize(
    "coeffs, roots",
    [((0, -1, 1), {0: 1, 1: 1}), ((-3, 2), {Fraction(3, 2): 1}), ((1, -2, 1), {1: 2})],
)
def test_rational_roots(coeffs, roots):
    assert rational_roots(U(*coeffs)) == roots


def test_no_rational_roots_for_v2_minus_v_plus_1():
    q = U(1, -1, 1)
    assert rational_roots(q) == {}
    # discriminant -3 and a direct test of every rational-root-theorem candidate
    assert q.discriminant_sign() == -1
    assert all(q(c) != 0 for c in (1, -1))
    assert squarefree_split(q) == [(q, 1, [2])]


def test_irreducible_quartic_and_product_of_quadratics():
    assert [f.degree for f in irreducible_factors(U(-2, 0, 0, 0, 1))] == [4]  # v^4 - 2
    prod = U(1, 0, 1) * U(-2, 0, 1)  # (v^2+1)(v^2-2)
    assert irreducible_factors(prod) == [U(-2, 0, 1), U(1, 0, 1)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.lists(st.integers(1, 3), min_size=5, max_size=5))
def test_squarefree_split_reassembles(roots, mults):
    q = UniPoly([1])
    for r, m in zip(roots, mults):
        q = q * U(-r, 1) ** m
    q = q * U(1, 0, 1) * Fraction(-2, 3)
    parts = squarefree_split(q)
    rebuilt = UniPoly([1])
    for f, m, _ in parts:
        rebuilt = rebuilt * f**m
    assert rebuilt == q.monic()
    for i, (a, _, _) in enumerate(parts):
        assert a == a.monic()
        assert poly_gcd(a, a.derivative()).degree == 0
        for b, _, _ in parts[i + 1 :]:
            assert poly_gcd(a, b).degree == 0
    assert set(rational_roots(q)) == set(roots)


def test_bivariate_squarefree_parts():
    parts = dict((m, q) for q, m in squarefree_parts(P("x^2*y*(x+y)^2")))
    assert set(parts) == {1, 2}
    assert order_at_origin(parts[1]) == 1
    assert order_at_origin(parts[2]) == 2
