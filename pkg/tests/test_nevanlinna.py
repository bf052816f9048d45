import math

import pytest

from expode.algebra import GaussianRational as GQ, Poly, RatFunc, Z
from expode.errors import InsufficientData, InvalidProblem, PoleOnCircle
from expode.expoly import ExpPoly, ExpTerm
from expode.nevanlinna import GrowthCurve, characteristic, order_fit, proximity, steinmetz_check, steinmetz_oracle

I = GQ(0, 1)
E = ExpPoly.term

# mpmath quadrature, 30 digits
M50_COSH = 31.8357478628475846658412360316
M10_EXP_PLUS_Z = 4.40707192980477190921446086212
STEINMETZ_Z_IZ = 0.543388965223067188926567324497


def test_proximity_closed_forms():
    assert proximity(E(1, Z), 10) == pytest.approx(10 / math.pi, rel=1e-6)
    assert proximity(E(1, Z) + E(1, -Z), 50) == pytest.approx(M50_COSH, rel=1e-4)
    assert proximity(E(1, Z) + Z, 10) == pytest.approx(M10_EXP_PLUS_Z, rel=1e-4)


def test_proximity_sample_doubling_is_stable():
    f = E(1, Z) + E(1, -Z)
    a, b = proximity(f, 50, samples=4096), proximity(f, 50, samples=8192)
    assert abs(a - b) <= 1e-3 * a


def test_pole_on_circle():
    f = ExpPoly([ExpTerm(RatFunc(Poly([1]), Z - 2), Z)])
    with pytest.raises(PoleOnCircle):
        proximity(f, 2.0)
    assert proximity(f, 3.0) > 0


def test_characteristic_needs_entire_input():
    with pytest.raises(InvalidProblem):
        characteristic(ExpPoly([ExpTerm(RatFunc(Poly([1]), Z), Z)]), [1, 2])


def test_order_fits():
    radii = [5 * 1.35**i for i in range(12)]
    order, const = order_fit(characteristic(E(1, Z), radii))
    assert order == pytest.approx(1, abs=0.02)
    assert const == pytest.approx(1 / math.pi, rel=0.03)
    order, _ = order_fit(characteristic(E(1, Z**2), radii))
    assert order == pytest.approx(2, abs=0.02)


def test_order_fit_needs_data():
    with pytest.raises(InsufficientData):
        order_fit(GrowthCurve([1, 2, 3], [1, 2, 3]))
    with pytest.raises(InsufficientData):
        order_fit(GrowthCurve([1, 2, 3, 4, 5], [1] * 5))


def test_steinmetz_oracle_values():
    # max(cos, -cos, 0) = |cos| averages to 2/pi
    assert steinmetz_oracle(Z, -Z) == pytest.approx(2 / math.pi, rel=1e-6)
    assert steinmetz_oracle(Z, Z * I) == pytest.approx(STEINMETZ_Z_IZ, rel=1e-5)
    assert steinmetz_oracle(Z**2 + Z * 3, Z**2 * I) == pytest.approx(STEINMETZ_Z_IZ, rel=1e-5)


def test_steinmetz_check_two_over_pi():
    rep = steinmetz_check(1, 1, Z, -Z)
    assert rep.C == pytest.approx(2 / math.pi, rel=0.03)
    assert rep.shift_scaled_b1 < 0.01
    assert rep.agrees


def test_steinmetz_rejects_bad_input():
    with pytest.raises(InvalidProblem):
        steinmetz_check(1, 1, Z, Z**2)
    with pytest.raises(InvalidProblem):
        steinmetz_check(1, 1, Z, Z)


def test_characteristic_is_monotone():
    f = E(1, Z) + E(Z, -Z * GQ(0, 2)) + Z**2
    curve = characteristic(f, [5, 7, 9, 12, 15, 20, 30])
    for a, b in zip(curve.T_values, curve.T_values[1:]):
        assert b >= a * 0.99
