import math
import warnings
from fractions import Fraction

import pytest

from expode.algebra import GaussianRational as GQ, Poly, Z
from expode.errors import ConstantPolynomial, DegreeMismatch, EqualLeadingCoefficients, ExactnessLost
from expode.indicator import delta, growth_radius, normalize_leading, sector_map, shrunk_sector

I = GQ(0, 1)


def test_delta_examples():
    assert delta(Z**2, 0) == pytest.approx(1)
    assert delta(Z * I, math.pi / 2) == pytest.approx(-1)
    assert delta(Z, math.pi) == pytest.approx(-1)
    with pytest.raises(ConstantPolynomial):
        delta(Poly([3]), 0)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_monomial_boundaries(k):
    smap = sector_map(Z**k)
    want = [math.pi / (2 * k) + j * math.pi / k for j in range(2 * k)]
    assert smap.theta == pytest.approx(want, abs=1e-12)


def test_z_squared_and_iz():
    smap = sector_map(Z**2)
    assert smap.theta == pytest.approx([math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4])
    # the band around theta = 0 is the last sector, wrapping through 2pi
    assert smap.sign[smap.sector_of(0.0)] == 1
    smap = sector_map(Z * I)
    assert smap.theta == pytest.approx([0, math.pi], abs=1e-15)
    assert smap.sign[0] == -1


def test_shrunk_sector():
    smap = sector_map(Z)
    s = shrunk_sector(smap, 1, 0.1)
    assert s.theta_lo == pytest.approx(3 * math.pi / 2 + 0.1)
    assert s.theta_hi == pytest.approx(5 * math.pi / 2 - 0.1)
    assert s.center == pytest.approx(2 * math.pi)


def test_normalize_examples():
    got = normalize_leading(Z * 2, Z)
    assert got.exact and got.p1 == Z and got.p2 == Z * Fraction(1, 2) and got.alpha == Fraction(1, 2)
    got = normalize_leading(Z**2, -Z**2)
    assert (got.p1, got.p2, got.alpha) == (Z**2, -Z**2, -1)
    got = normalize_leading(Z, Z * Fraction(3, 4))
    assert got.alpha == Fraction(3, 4)


def test_normalize_swaps_and_errors():
    got = normalize_leading(Z, Z * 4)
    assert got.swapped and got.alpha == Fraction(1, 4)
    with pytest.raises(DegreeMismatch):
        normalize_leading(Z, Z**2)
    with pytest.raises(EqualLeadingCoefficients):
        normalize_leading(Z, Z + 0)


def test_normalize_inexact_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        got = normalize_leading(Z**2 * 2, Z**2)
    assert not got.exact
    assert any(issubclass(x.category, ExactnessLost) for x in w)
    assert got.p1[2] == pytest.approx(1)


def test_growth_radius():
    r0 = growth_radius(Z**2 - Z * 30, 0.0)
    assert r0 is not None
    for r in (r0, 2 * r0, 10 * r0):
        assert (r * r - 30 * r) >= 0.9 * r * r
    assert growth_radius(Z, math.pi) is None
