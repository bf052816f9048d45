from fractions import Fraction

import pytest

from expode.algebra import GaussianRational as GQ, Poly, RatFunc, Z
from expode.errors import NonPolynomialDenominator, NonPolynomialExponent, NonzeroConstantExponent, ParseError
from expode.expoly import ExpPoly
from expode.parser import parse, to_text


def test_examples():
    f = parse("exp(z) + exp(-z)")
    assert isinstance(f, ExpPoly) and len(f) == 2
    p = parse("(3/4)*z^2 + (1+2i)*z")
    assert p == Z**2 * Fraction(3, 4) + Z * GQ(1, 2)
    with pytest.raises(NonzeroConstantExponent):
        parse("exp(z+1)")


def test_tightest_type():
    assert isinstance(parse("z^2 - 1"), Poly)
    assert isinstance(parse("1/z"), RatFunc)
    assert parse("(z^2-1)/(z-1)") == Z + 1
    assert parse("0.25") == Poly([Fraction(1, 4)])


def test_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse("z + * 2")
    assert (e.value.line, e.value.col) == (1, 5)
    with pytest.raises(ParseError):
        parse("exp(z")
    with pytest.raises(ParseError):
        parse("w")
    with pytest.raises(NonPolynomialExponent):
        parse("exp(1/z)")
    with pytest.raises(NonPolynomialDenominator):
        parse("1/(1+exp(z))")


def test_division_by_single_term_exponential():
    assert parse("z/exp(z)") == parse("z*exp(-z)")


@pytest.mark.parametrize("text", [
    "3/4*z^2 + (1+2*i)*z",
    "(z + 1)/(z^2 - 2)",
    "-1/64 + 8*exp(3/4*z) - 16*exp(z)",
    "(z^2 + i)*exp(-2*z^3 + i*z) - 5",
])
def test_round_trip(text):
    v = parse(text)
    assert parse(to_text(v)) == v
