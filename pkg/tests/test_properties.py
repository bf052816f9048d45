import cmath

from hypothesis import given, settings
from hypothesis import strategies as st

from expode.algebra import Poly, RatFunc, eval_complex, poly_nth_root
from expode.expoly import ep_is_zero
from expode.indicator import delta, sector_map
from expode.parser import parse, to_text
from expode.tc import multinomial_C, solve_coefficients
from strategies import exppolys, exppolys_rational, gq, nonzero_polys, polys, ratfuncs

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Poly()


@given(polys, nonzero_polys)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(ratfuncs, ratfuncs)
def test_ratfunc_canonical(a, b):
    s = a + b
    assert s.den.is_zero() is False and s.den.lead() == 1
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(nonzero_polys, st.integers(2, 4))
def test_nth_root_inverts_power(p, n):
    g = poly_nth_root(p**n, n)
    assert g**n == p**n


@given(exppolys_rational, exppolys_rational)
def test_exppoly_derivative_product_rule(f, g):
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(exppolys_rational)
def test_exppoly_self_difference(f):
    assert ep_is_zero(f - f)
    assert ep_is_zero(f * 0)


@given(exppolys, exppolys)
def test_exppoly_eval_is_homomorphic(f, g):
    z = 0.3 - 0.7j
    lhs = complex((f * g)(z))
    rhs = complex(f(z)) * complex(g(z))
    assert cmath.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9)


@given(exppolys_rational)
def test_parse_print_round_trip(f):
    assert parse(to_text(f)) == f


@given(nonzero_polys.filter(lambda p: p.degree >= 1), st.floats(0, 6.283))
def test_indicator_sign_matches_sector(p, theta):
    smap = sector_map(p)
    d = delta(p, theta)
    if abs(d) > 1e-9:
        j = smap.sector_of(theta)
        assert (d > 0) == (smap.sign[j] > 0)


@given(st.integers(2, 4), st.integers(0, 4))
def test_solved_coefficients_cancel(n, m):
    c = solve_coefficients(n, m)
    assert multinomial_C(0, n, c) == 1
    for j in range(1, m + 1):
        assert multinomial_C(j, n, c) == (1 if j == 1 else 0)
