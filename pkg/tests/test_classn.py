import cmath
import math

import numpy as np
import pytest

from expode.algebra import Poly, RatFunc, Z
from expode.classn import classify, default_r0, dichotomy_report, integrate_ray, trace_residual
from expode.errors import PoleOnRay


def _exact_q0(r, F0, r0):
    # F' = F - 1 along theta = 0: F = 1 + (F0 - 1) e^{r - r0}
    return 1 + (F0 - 1) * math.exp(r - r0)


def test_constant_q_matches_explicit_solution():
    tr = integrate_ray(1, -1, Poly(), 0.0, 3.0, r0=1.0, r_max=15)
    want = math.log(abs(_exact_q0(15.0, 3.0, 1.0)))
    assert tr.log_abs[-1] == pytest.approx(want, rel=1e-8)


def test_homogeneous_log_form_cross_check():
    # R2 = 0, q = z: log F = log F0 + e^r - e^{r0}
    tr = integrate_ray(1, 0, Z, 0.0, 1.0, r0=1.0, r_max=6)
    want = math.exp(6) - math.exp(1)
    assert tr.log_abs[-1] == pytest.approx(want, rel=1e-8)


def test_super_exponential_ray():
    tr = integrate_ray(1, -1, Z, 0.0, 1 + 1j, r_max=25)
    assert tr.status == "super_exponential"
    fit = tr.fit_window(5, 25)
    assert 0.9 <= fit.exp_rate <= 1.1
    assert trace_residual(tr, 1, -1, Z) < 1e-6


def test_decay_ray_is_polynomially_bounded():
    tr = integrate_ray(1, -1, Z, math.pi, -2, r_max=25)
    assert tr.status == "polynomially_bounded"
    assert tr.fit_window(5, 25).poly_exponent <= 2.2


def test_zero_crossing_on_real_ray():
    # F0 = -2 on theta = pi: the real solution passes through zero
    tr = integrate_ray(1, -1, Z, math.pi, -2.0, r_max=10)
    assert tr.zero_crossings == 1
    assert tr.status == "polynomially_bounded"


def test_steps_land_on_output_grid():
    tr = integrate_ray(1, -1, Z, 1.0, 1.0, r0=1.0, r_max=3, dr_out=0.25)
    assert np.allclose(tr.r_values, np.arange(1.0, 3.01, 0.25))


def test_default_r0_and_poles():
    assert default_r0(RatFunc(Poly([1]), Z - 3), 1) == pytest.approx(7.0)
    with pytest.raises(PoleOnRay):
        integrate_ray(RatFunc(Poly([1]), Z - 5), -1, Z, 0.0, 1.0, r0=1.0, r_max=10)


def test_dichotomy():
    rep = dichotomy_report(1, -1, Z)
    assert rep.flagged
    flagged = [s for s in rep.sectors if s.flagged]
    assert len(flagged) == 1 and abs(cmath.exp(1j * flagged[0].theta) - 1) < 1e-9
    for s in rep.sectors:
        if s.growth is False:
            assert s.within_bound
    assert not dichotomy_report(1, -1, Poly()).flagged


def test_fixed_point_for_constant_q():
    tr = integrate_ray(1, -1, Poly(), 0.0, 1.0, r0=1.0, r_max=10)
    assert np.max(np.abs(tr.logF)) < 1e-12
    assert tr.status == "polynomially_bounded"


@pytest.mark.parametrize("theta,F0", [(0.0, 1 + 1j), (math.pi, -2.0)])
def test_halving_tolerance_is_stable(theta, F0):
    a = integrate_ray(1, -1, Z, theta, F0, r_max=25).log_abs[-1]
    b = integrate_ray(1, -1, Z, theta, F0, r_max=25, rtol=5e-11, atol=5e-13).log_abs[-1]
    assert abs(a - b) <= 1e-4 * abs(a)
