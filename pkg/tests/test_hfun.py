import cmath
import math

import numpy as np
import pytest

from expode.algebra import Poly, Z
from expode.expoly import ExpPoly
from expode.hfun import HEvalConfig, asymptotic_constant, eval_H, h_remainder, solve_first_order, verify_theorem0
from expode.indicator import sector_map

# mpmath, 30 digits
GAMMA_4_3 = 0.892979511569249211218564313658
INT_EXP_T2_T = 0.545641360765047042099387827377
H_Z2_AT_1_PLUS_I = -0.638873051564443293117705746519 + 0.990373092322361388933947118306j
H_Z2_AT_M2_HALF_I = 15.899167827861495194507849349 + 34.3110126948731607168204556282j


def _points(n, radius, seed=3):
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def test_linear_closed_form():
    for z in _points(20, 10.0):
        want = cmath.exp(z) - 1
        assert abs(eval_H(Z, 1, z) - want) <= 1e-9 * abs(want)


def test_two_leg_path_agrees_with_segment():
    cfg = HEvalConfig(path="two_leg_via_circle")
    for z in _points(8, 4.0, seed=5):
        a, b = eval_H(Z**2, 1, z), eval_H(Z**2, 1, z, cfg)
        assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


def test_dawson_type_values():
    assert eval_H(Z**2, 1, 1 + 1j) == pytest.approx(H_Z2_AT_1_PLUS_I, rel=1e-10)
    assert eval_H(Z**2, 1, -2 + 0.5j) == pytest.approx(H_Z2_AT_M2_HALF_I, rel=1e-10)


def test_asymptotic_constants():
    smap = sector_map(Z**3)
    j = smap.sector_of(0.0)
    assert asymptotic_constant(Z**3, 1, j) == pytest.approx(GAMMA_4_3, rel=1e-10)
    smap = sector_map(Z**2 + Z)
    j = smap.sector_of(0.0)
    assert asymptotic_constant(Z**2 + Z, 1, j) == pytest.approx(INT_EXP_T2_T, rel=1e-10)
    with pytest.raises(ValueError):
        asymptotic_constant(Z, 1, 0)


def test_remainder_matches_direct_difference():
    a = asymptotic_constant(Z**2, Z, 3)
    z = 3.0 + 0.2j
    direct = eval_H(Z**2, Z, z) - a * cmath.exp(z * z)
    assert h_remainder(Z**2, Z, z) == pytest.approx(direct, abs=1e-9 * abs(cmath.exp(z * z)))
    # closed form: H - e^{z^2}/2 = -1/2
    assert h_remainder(Z**2, Z, z) == pytest.approx(-0.5, rel=1e-10)


def test_theorem_harness_linear():
    reports = verify_theorem0(Z, 1)
    growth = [r for r in reports if r.growth]
    assert len(growth) == 1
    assert growth[0].a == pytest.approx(1, abs=1e-10)
    assert growth[0].max_abs_s <= 1e-9


def test_theorem_harness_z_squared_exact_s():
    reports = verify_theorem0(Z**2, 1 * Z, radii=(5.0, 10.0, 20.0))
    for rep in reports:
        if not rep.growth:
            continue
        assert rep.a == pytest.approx(0.5, abs=1e-10)
        # H - e^{z^2}/2 = -1/2 exactly, so s(r) = log(1/2)/r^2
        for s, r in zip(rep.s_values, rep.radii):
            assert s == pytest.approx(math.log(0.5) / r**2, abs=1e-9)


def test_first_order_solution_residual():
    sol = solve_first_order(Z * 2, ExpPoly.term(1, Z))
    for z in (0.5, 1 + 1j, -1.5j):
        err, scale = sol.residual(z)
        assert err <= 1e-6 * scale
    with pytest.raises(ValueError):
        solve_first_order(Poly(), 1)


def test_zero_inputs():
    assert eval_H(Z, 0, 2.0) == 0
    assert eval_H(Z, 1, 0) == 0
