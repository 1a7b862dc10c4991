from fractions import Fraction

import pytest
from hypothesis import given

from ponzeta.errors import ParseError
from ponzeta.weyl import AD, A, N, Commutator, Generator, Power, Product, ScalarMul, Sum, normal_order, parse, pretty
from strategies import expressions


def test_leaf():
    assert parse("a") == Generator("a")


def test_single_bracket():
    assert parse("[a, ad]") == Commutator(A, AD)


def test_two_factor_product():
    assert parse("ad^2 * a^2") == Product((Power(AD, 2), Power(A, 2)))


def test_number_operator_token():
    assert parse("n") == N


@pytest.mark.parametrize(
    "text, coeff",
    [("3", Fraction(3)), ("1/2", Fraction(1, 2)), ("-2/6", Fraction(-1, 3))],
)
def test_rational_scalars(text, coeff):
    assert parse(text) == ScalarMul(coeff)


def test_sum_keeps_signs_in_order():
    e = parse("a - ad + n")
    assert e == Sum((A, AD, N), (1, -1, 1))


def test_precedence_power_binds_tighter_than_product():
    assert parse("a*ad^2") == Product((A, Power(AD, 2)))


def test_whitespace_is_ignored():
    assert parse("  [ a^2 ,ad^2 ] ") == parse("[a^2, ad^2]")


@pytest.mark.parametrize(
    "text, position, fragment",
    [
        ("a^-1", 2, "negative exponent"),
        ("a^1/2", 2, "non-integer exponent"),
        ("a^1.5", 2, "non-integer exponent"),
        ("a +", 3, "end of input"),
        ("[a ad]", 3, "expected ','"),
        ("x", 0, "unknown symbol"),
        ("(a", 2, "expected ')'"),
        ("a $", 2, "unexpected character"),
        ("1/0", 2, "zero denominator"),
        ("2a", 1, "unexpected"),
        ("", 0, "end of input"),
    ],
)
def test_errors_carry_position(text, position, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    assert fragment in str(info.value)


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        parse("a^")


@pytest.mark.parametrize("text", ["a", "[a, ad]", "ad^2*a^2", "1/2*a - 3*n", "(a + ad)^2", "-2*a", "a^0", "[[a, n], ad^3]"])
def test_pretty_round_trip(text):
    expr = parse(text)
    assert parse(pretty(expr)) == expr
    assert pretty(expr).replace(" ", "") == text.replace(" ", "")


@given(expressions)
def test_pretty_round_trip_random(expr):
    assert parse(pretty(expr)) == expr


@given(expressions)
def test_pretty_preserves_the_operator(expr):
    assert normal_order(parse(pretty(expr))) == normal_order(expr)
