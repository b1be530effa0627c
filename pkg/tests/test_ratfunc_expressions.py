"""Rational functions in t and the expression grammar used by every file format."""

from fractions import Fraction

import pytest

from coxlib.expressions import (
    ExpressionError,
    as_ratfunc,
    format_number,
    format_ratfunc,
    parse_expression,
    parse_number,
)
from coxlib.numfield import FieldSpec
from coxlib.ratfunc import PoleError, Polynomial, RationalFunction, poly_gcd

Q = FieldSpec()
Q5 = FieldSpec.of(5)
Q56 = FieldSpec.of(5, 6)


def t(spec=Q):
    return RationalFunction.parameter(spec)


# ─── polynomials / rational functions ─────────────────────────────────────────


def test_polynomial_strips_trailing_zeros():
    p = Polynomial(Q, (1, 2, 0, 0))
    assert p.degree == 1
    assert Polynomial(Q, ()).degree == -1


def test_poly_gcd_is_monic():
    x = t()
    a = (x - 1) * (x - 1) * (x + 2)
    b = (x - 1) * (x + 3)
    g = poly_gcd(a.numerator, b.numerator)
    assert g.degree == 1
    assert g.evaluate(1).is_zero
    assert g.leading == 1


def test_rational_function_is_reduced():
    x = t()
    f = (x * x - 1) / (x - 1)
    assert f == x + 1
    assert f.denominator.degree == 0


def test_as_monomial():
    x = t(Q5)
    alpha = Q5.sqrt(5)
    assert (x * alpha).as_monomial() == (alpha, 1)
    assert (alpha / x).as_monomial() == (alpha, -1)
    assert (x + 1).as_monomial() is None


def test_evaluate_and_pole():
    x = t()
    f = 1 / (x - 2)
    assert f.evaluate(3) == 1
    with pytest.raises(PoleError):
        f.evaluate(2)
    # PoleError is a ZeroDivisionError for callers catching the generic case
    assert issubclass(PoleError, ZeroDivisionError)


def test_constant_value():
    assert RationalFunction.constant(Fraction(3, 2), Q).constant_value() == Fraction(3, 2)
    with pytest.raises(ValueError):
        t().constant_value()


# ─── parsing ──────────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2", 2),
        ("-3/2", Fraction(-3, 2)),
        ("(1 + 2) * 3", 9),
        ("- -4", 4),
        ("2/(1 + 1)", 1),
    ],
)
def test_parse_rational_numbers(text, expected):
    assert parse_number(text, Q) == expected


def test_parse_radicals():
    x = parse_number("-4*sqrt(5)/25", Q56)
    assert x == -4 * Q56.sqrt(5) / 25
    assert parse_number("sqrt(30)", Q56) == Q56.sqrt(5) * Q56.sqrt(6)
    assert parse_number("sqrt(4)", Q) == 2


def test_parse_plain_int():
    assert parse_number(7, Q5) == 7


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty expression"),
        ("1 +", "unexpected end"),
        ("2 ^ 3", "unexpected character"),
        ("sqrt(2)", "undeclared radicand"),
        ("1/0", "division by zero"),
        ("foo", "unknown name"),
        ("(1 + 2", "expected ')'"),
        ("sqrt(t)", "integer literal"),
    ],
)
def test_parse_errors_name_the_problem(text, fragment):
    with pytest.raises(ExpressionError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        parse_number(text, Q5)


def test_error_position():
    with pytest.raises(ExpressionError) as info:
        parse_number("1 + sqrt(7)", Q5)
    assert info.value.position == 9


def test_parameter_rejected_for_constants():
    with pytest.raises(ExpressionError, match="parameter 't' not allowed"):
        parse_number("2*t", Q)


def test_parameter_expression():
    f = parse_expression("-(2 + sqrt(5)*t)/(2 + 2*sqrt(5)*t)", Q5, allow_parameter=True)
    assert isinstance(f, RationalFunction)
    assert f.evaluate(0) == -1


def test_definitions_are_substituted():
    mu = parse_expression("4*t/((t - 1)*(t - 1))", Q, allow_parameter=True)
    nu = parse_expression("2 + 3*mu", Q, allow_parameter=True, definitions={"mu": mu})
    assert nu.evaluate(2) == 26


def test_as_ratfunc_wraps_constants():
    f = as_ratfunc(parse_number("sqrt(5)", Q5))
    assert f.is_constant
    assert f.constant_value() == Q5.sqrt(5)


# ─── formatting ───────────────────────────────────────────────────────────────


@pytest.mark.parametrize("text", ["-4*sqrt(5)/25", "1 + sqrt(2)", "-3/2", "0"])
def test_format_number_reparses(text):
    spec = FieldSpec.of(2, 5)
    x = parse_number(text, spec)
    assert parse_number(format_number(x), spec) == x


def test_format_ratfunc_reparses():
    f = parse_expression("(sqrt(5)*t - 1)/(t*t + 2)", Q5, allow_parameter=True)
    text = format_ratfunc(f)
    assert parse_expression(text, Q5, allow_parameter=True) == f


def test_format_simple_monomials():
    assert format_ratfunc(-2 * t()) == "-2*t"
    assert format_ratfunc(1 / t()) == "1/(t)"
