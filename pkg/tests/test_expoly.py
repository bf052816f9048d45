import cmath
import math
from fractions import Fraction

import pytest

from expode.algebra import Poly, RatFunc, Z
from expode.errors import NonzeroConstantExponent, Overflow
from expode.expoly import ExpPoly, ExpTerm, ep_arith, ep_derivative, ep_eval, ep_is_zero, ep_normalize, ep_pow

half = Z * Fraction(1, 2)
quarter = Z * Fraction(1, 4)


def E(q, c=1):
    return ExpPoly.term(c, q)


def test_normalize_examples():
    assert ep_normalize([(1, Z), (2, Z)]) == E(Z, 3)
    assert ep_normalize([(1, Z), (-1, Z)]).is_zero()
    got = ep_normalize([(Z, Z**2), (RatFunc(1, Z), Z), (-Z, Z**2)])
    assert got == ExpPoly([ExpTerm(RatFunc(1, Z), Z)])
    with pytest.raises(NonzeroConstantExponent):
        ep_normalize([(1, Z + 1)])


def test_arith_examples():
    assert ep_arith(E(Z) + 1, E(Z) - 1, "mul") == E(Z * 2) - 1
    assert ep_arith(E(half), E(half), "mul") == E(Z)
    two = ep_arith(E(Z, Z), E(-Z, 3), "add")
    assert len(two) == 2


def test_pow_examples():
    assert ep_pow(E(half), 2) == E(Z)
    c0, c1 = Fraction(3), Fraction(-5, 7)
    got = ep_pow(E(half, c0) + E(quarter, c1), 2)
    want = E(Z, c0**2) + E(Z * Fraction(3, 4), 2 * c0 * c1) + E(half, c1**2)
    assert got == want
    assert ep_pow(1 + E(Z), 3) == 1 + E(Z, 3) + E(Z * 2, 3) + E(Z * 3)


def test_derivative_examples():
    b1 = Z**2 + 1
    p1 = Z**3 - Z
    got = ep_derivative(E(p1, b1))
    B1 = RatFunc(b1.derivative(), b1) + RatFunc(p1.derivative())
    assert got == ExpPoly([ExpTerm(RatFunc(b1) * B1, p1)])
    assert ep_derivative(E(Z)) == E(Z)
    assert ep_derivative(E(Z**2, Z)) == E(Z**2, 1 + Z**2 * 2)


def test_is_zero_examples():
    assert ep_is_zero(E(Z) - E(Z))
    assert not ep_is_zero(E(Z) - E(Z * 2))


def test_eval_examples():
    assert ep_eval(E(Z), 0) == 1
    assert ep_eval(E(Z) + E(-Z), 1j * math.pi) == pytest.approx(-2)
    assert ep_eval(E(Z**2, Z), 1) == pytest.approx(math.e, rel=1e-15)
    with pytest.raises(Overflow):
        ep_eval(E(Z), 800)


def test_log_abs_without_overflow():
    f = E(Z) + E(-Z)
    assert f.log_abs(2000.0) == pytest.approx(2000.0)
    assert f.log_abs(3.0) == pytest.approx(math.log(abs(2 * cmath.cosh(3.0))))


def test_sorted_canonical_order():
    f = E(Z**2) + E(Z) + 5 + E(-Z)
    degrees = [t.exponent.degree for t in f.terms]
    assert degrees == sorted(degrees)
    assert str(f) == "5 + exp(-z) + exp(z) + exp(z^2)"
