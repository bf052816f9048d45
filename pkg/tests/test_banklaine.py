import random
from fractions import Fraction

import pytest

from expode.algebra import Poly, Z
from expode.banklaine import (
    ansatz_feasible,
    banklaine_residual,
    construct_half,
    random_half_case,
    three_quarter_family,
    verify_banklaine,
)
from expode.errors import KappaNotSquarefree, NonPolynomialRelation, ZeroParameter
from expode.expoly import ExpPoly


def test_half_examples():
    w = construct_half(Z * 2, 1, 0, 1)
    assert (w.b2, w.b3) == (Poly([1]), Poly())
    assert verify_banklaine(w.A, w.hprime, w.kappa)
    w = construct_half(Z * 2, 1, Z * 2, 1)
    # b2 = 2 g1 gamma + g1 p1'/2, b3 = gamma^2 + gamma'
    assert (w.b2, w.b3) == (Z * 4 + 1, Z**2 * 4 + 2)
    assert w.p2 == Z


def test_half_with_kappa():
    # kappa = z, g1 = z, gamma with 2 gamma(0) kappa'(0) + kappa''(0) = 0, so gamma(0) = 0
    w = construct_half(Z, Z, Z, Z**2)
    assert verify_banklaine(w.A, w.hprime, w.kappa)
    with pytest.raises(NonPolynomialRelation):
        construct_half(Z, Z, 1, Z**2)
    with pytest.raises(KappaNotSquarefree):
        construct_half(Z, Z**2, 0, Z**4)


def test_random_half_cases_verify():
    rng = random.Random(11)
    for _ in range(20):
        w = random_half_case(rng)
        assert banklaine_residual(w.A, w.hprime, w.kappa).is_zero()


def test_three_quarter_family():
    w = three_quarter_family(1)
    assert w.matches_printed
    w = three_quarter_family(2)
    assert w.coefficient(Z) == -256
    assert w.coefficient(Z * Fraction(3, 4)) == 64
    assert w.coefficient(Poly()) == Fraction(-1, 64)
    assert not w.matches_printed
    assert not verify_banklaine(w.printed_A, w.hprime)
    with pytest.raises(ZeroParameter):
        three_quarter_family(0)


def test_perturbed_A_fails():
    w = three_quarter_family(Fraction(1, 2))
    assert not verify_banklaine(w.A + ExpPoly.term(Fraction(1, 1000), Z), w.hprime)


def test_ansatz_negative_control():
    w = three_quarter_family(3)
    b = [-w.A.coeff(e).num for e in (Z, Z * Fraction(3, 4), Poly())]
    ok = ansatz_feasible(Z, Z * Fraction(3, 4), *b)
    assert ok.feasible
    assert verify_banklaine(w.A, ok.hprime)
    bad = ansatz_feasible(Z, Z * Fraction(2, 3), 1, 1, 0)
    assert not bad.feasible
