"""The eight acceptance criteria, each at its stated tolerance and time budget."""

import cmath
import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from expode.algebra import GaussianRational as GQ, Poly, Z
from expode.banklaine import construct_half, random_half_case, three_quarter_family, verify_banklaine
from expode.classn import dichotomy_report, integrate_ray
from expode.expoly import ExpPoly, ep_is_zero
from expode.hfun import eval_H, verify_theorem0
from expode.nevanlinna import characteristic, order_fit, steinmetz_check
from expode.parser import parse, to_text
from expode.tc import TCProblem, construct_case1, construct_case2, multinomial_C, solve_coefficients, verify_tc
from strategies import rand_exppoly, rand_poly


@pytest.fixture
def criterion(request, capsys):
    @contextmanager
    def run(number: int, title: str, budget: float):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            ok = ok and elapsed < budget
            with capsys.disabled():
                status = "PASS" if ok else "FAIL"
                print(f"\n[acceptance {number}] {status} {title} ({elapsed:.2f}s, budget {budget:.0f}s)")
        assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s"

    return run


def _spread(n, radius, seed):
    rng = np.random.default_rng(seed)
    theta = 2 * np.pi * (np.arange(n) + rng.random(n)) / n
    return radius * np.sqrt(rng.random(n)) * np.exp(1j * theta)


def test_c1_closed_forms(criterion):
    with criterion(1, "H closed forms, 50 points each, rel 1e-9", 5):
        for z in _spread(50, 10.0, 1):
            want = cmath.exp(z) - 1
            assert abs(eval_H(Z, 1, z) - want) <= 1e-9 * abs(want)
        for z in _spread(50, 10.0, 2):
            want = (cmath.exp(z * z) - 1) / 2
            assert abs(eval_H(Z**2, Z, z) - want) <= 1e-9 * abs(want)


def test_c2_theorem_harness(criterion):
    with criterion(2, "s(r) <= 1e-6 on growth central rays, a to 1e-8", 10):
        radii = (5.0, 10.0, 15.0, 20.0)
        for p, beta, a in ((Z, 1, 1.0), (Z**2, Z, 0.5)):
            reports = verify_theorem0(p, beta, radii=radii, rays_per_sector=1)
            growth = [r for r in reports if r.growth]
            assert len(growth) == p.degree
            for rep in growth:
                assert abs(rep.a - a) <= 1e-8
                assert max(rep.s_values) <= 1e-6


def test_c3_tumura_clunie_exact(criterion):
    with criterion(3, "coefficients, factor bound and mixtures, exact", 30):
        for n in (2, 3, 4):
            for m in range(6):
                c = solve_coefficients(n, m)
                assert len(c) == m + 1
                for j in range(2, m + 1):
                    assert multinomial_C(j, n, c) == 0
                    brute = sum((math.prod((c[i] for i in idx), start=GQ(1))
                                 for idx in itertools.product(range(m + 1), repeat=n) if sum(idx) == j), GQ(0))
                    assert brute == 0
                alpha = Fraction((m + 1) * n - 1, (m + 1) * n)
                prob = TCProblem.from_alpha(n, alpha, 1, 1, Z)
                w = construct_case2(prob)
                assert w.m == m
                rep = verify_tc(w, prob)
                assert all(f <= prob.bound for f in rep.factors)
            prob = TCProblem(n, Poly([1]), Poly([1]), Z, -Z)
            w = construct_case1(prob)
            mixtures = {(Z * j - Z * (n - j)) * Fraction(1, n) for j in range(1, n)}
            assert w.residual.terms and all(t.exponent in mixtures for t in w.residual.terms)
            assert verify_tc(w, prob).ok


def test_c4_three_quarter(criterion):
    with criterion(4, "three-quarter family exact, printed A at c=1, -16c^4 at c=2", 1):
        for c in (1, 2, -3, Fraction(1, 2), Fraction(5, 7), Fraction(-2, 3)):
            w = three_quarter_family(c)
            assert verify_banklaine(w.A, w.hprime)
            # with g = e^h, g"/g + A = h" + h^2 + A
            assert ep_is_zero(w.hprime.derivative() + w.hprime * w.hprime + w.A)
        one = three_quarter_family(1)
        printed = -(ExpPoly.term(16, Z) - ExpPoly.term(8, Z * Fraction(3, 4)) + Fraction(1, 64))
        assert one.A == printed
        two = three_quarter_family(2)
        assert two.A.coeff(Z) == -256 == -16 * 2**4


def test_c5_half_case(criterion):
    with criterion(5, "half case example and 20 random constructions", 5):
        w = construct_half(Z * 2, 1, 0, 1)
        assert w.b2 == Poly([1]) and w.b3.is_zero()
        assert verify_banklaine(w.A, w.hprime, w.kappa)
        rng = random.Random(2024)
        for _ in range(20):
            w = random_half_case(rng)
            assert verify_banklaine(w.A, w.hprime, w.kappa)


def test_c6_nevanlinna(criterion):
    with criterion(6, "order fits and C = 2/pi with b1 scaling", 20):
        radii = [5 * 1.35**i for i in range(12)]
        order, const = order_fit(characteristic(ExpPoly.term(1, Z), radii))
        assert abs(order - 1) <= 0.02
        assert abs(const - 1 / math.pi) <= 0.03 / math.pi
        order, _ = order_fit(characteristic(ExpPoly.term(1, Z**2), radii))
        assert abs(order - 2) <= 0.02
        rep = steinmetz_check(1, 1, Z, -Z, r=50)
        assert abs(rep.C - 2 / math.pi) <= 0.03 * 2 / math.pi
        assert rep.shift_scaled_b1 < 0.01


def test_c7_class_n(criterion):
    with criterion(7, "super-exponential at theta=0, s <= 2.2 at theta=pi, q=0 unflagged", 30):
        F0s = (1, 1 + 1j, -2)
        for F0 in F0s:
            tr = integrate_ray(1, -1, Z, 0.0, F0, r_max=25)
            assert tr.status == "super_exponential"
            assert 0.9 <= tr.fit_window(5, 25).exp_rate <= 1.1
            back = integrate_ray(1, -1, Z, math.pi, F0, r_max=25)
            assert back.fit_window(5, 25).poly_exponent <= 2.2
        # log-form integrator against the explicit homogeneous solution
        hom = integrate_ray(1, 0, Z, 0.0, 1.0, r0=1.0, r_max=6)
        assert abs(hom.log_abs[-1] - (math.exp(6) - math.e)) <= 1e-8 * math.exp(6)
        assert not dichotomy_report(1, -1, Poly(), F0s=F0s).flagged


def test_c8_property_suites(criterion):
    with criterion(8, "1000 cases each: ring axioms, product rule, a-a, round trip", 60):
        rng = random.Random(8)
        for _ in range(1000):
            a, b, c = rand_poly(rng), rand_poly(rng), rand_poly(rng)
            assert (a + b) + c == a + (b + c) and a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
        for _ in range(1000):
            f, g = rand_exppoly(rng, rational=True), rand_exppoly(rng, rational=True)
            assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
        for _ in range(1000):
            f = rand_exppoly(rng, rational=True)
            assert ep_is_zero(f - f)
        for _ in range(1000):
            f = rand_exppoly(rng, rational=True)
            assert parse(to_text(f)) == f
