import itertools
import math
from fractions import Fraction

import pytest

from expode.algebra import GaussianRational as GQ, Poly, Z
from expode.errors import P2NotProportional, VerificationFailed
from expode.expoly import ExpPoly
from expode.tc import (
    TCProblem,
    construct,
    construct_case1,
    construct_case2,
    exponent_factor,
    kappa_iota,
    multinomial_C,
    smallest_m,
    solve_coefficients,
    verify_tc,
)


def brute_C(k0, n, c):
    """Enumerate ordered n-tuples of indices; independent of the pruned recursion."""
    total = Fraction(0)
    for idx in itertools.product(range(len(c)), repeat=n):
        if sum(idx) == k0:
            total += math.prod((c[i] for i in idx), start=Fraction(1))
    return total


def test_smallest_m_examples():
    assert [smallest_m(2, a) for a in (Fraction(1, 2), Fraction(3, 4), Fraction(7, 8))] == [0, 1, 3]
    assert smallest_m(3, Fraction(2, 3)) == 0
    assert smallest_m(3, Fraction(5, 6)) == 1
    with pytest.raises(ValueError):
        smallest_m(2, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_multinomial_against_brute_force(n):
    c = [Fraction(1), Fraction(1, 2), Fraction(-1, 8), Fraction(3, 7)]
    for k0 in range(0, 3 * n + 1):
        assert multinomial_C(k0, n, c) == brute_C(k0, n, c)


def test_multinomial_example():
    assert multinomial_C(2, 2, (1, Fraction(1, 2), Fraction(-1, 8))) == 0


def test_solve_coefficients_examples():
    assert solve_coefficients(2, 3) == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]
    assert solve_coefficients(3, 0) == [1]


def test_case1_examples():
    w = construct_case1(TCProblem(2, Poly([1]), Poly([1]), Z, -Z))
    assert w.residual == ExpPoly.term(2, Poly())
    w = construct_case1(TCProblem(4, Poly([1]), Poly([1]), Z, -Z))
    assert w.residual == ExpPoly.term(4, Z * Fraction(1, 2)) + ExpPoly.term(4, -Z * Fraction(1, 2)) + 6
    assert verify_tc(w, TCProblem(4, Poly([1]), Poly([1]), Z, -Z)).ok


def test_case2_five_sixths():
    prob = TCProblem.from_alpha(3, Fraction(5, 6), 1, 1, Z)
    w = construct(prob)
    assert w.m == 1
    # f = e^{z/3} + e^{z/6}/3, expanded by hand
    assert w.residual == ExpPoly.term(Fraction(1, 3), Z * Fraction(2, 3)) + ExpPoly.term(Fraction(1, 27), Z * Fraction(1, 2))
    rep = verify_tc(w, prob)
    assert rep.ok and rep.matched_b2
    assert all(f <= rep.bound for f in rep.factors)


def test_case2_requires_proportional_p2():
    prob = TCProblem(2, Poly([1]), Poly([1]), Z**2, Z**2 * Fraction(3, 4) + Z)
    with pytest.raises(P2NotProportional):
        construct_case2(prob)


def test_verify_rejects_tampered_witness():
    prob = TCProblem.from_alpha(2, Fraction(3, 4), 1, 1, Z)
    w = construct(prob)
    w.residual = w.residual + 1
    with pytest.raises(VerificationFailed):
        verify_tc(w, prob)


def test_verify_with_lower_order_gamma():
    prob = TCProblem.from_alpha(2, Fraction(3, 4), 1, Z, Z**2)
    w = construct(prob)
    rep = verify_tc(w, prob, gamma=ExpPoly.term(Z, Z))
    assert rep.ok
    with pytest.raises(VerificationFailed):
        verify_tc(w, prob, gamma=ExpPoly.term(1, Z**2))


def test_exponent_factor():
    assert exponent_factor(Z * Fraction(1, 3), Z) == Fraction(1, 3)
    assert exponent_factor(Z, Z**2) == 0


def test_kappa_iota_example():
    prob = TCProblem.from_alpha(2, Fraction(3, 4), 1, 1, Z)
    ki = kappa_iota(prob, 1)
    assert ki.iota[0] == Fraction(-1, 8)
    assert ki.iota[1] == Fraction(-1, 64)
    assert ki.kappa == [Fraction(1, 2), Fraction(1, 4)]
    assert ki.t == [Fraction(1, 2), Fraction(1, 4)]
