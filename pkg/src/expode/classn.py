"""Ray integration of ``F' = R1 e^{q} F + R2`` and the growth dichotomy across sectors of ``q``.

Along ``z = r e^{it}`` the unknown is carried as ``u = log F`` with
``du/dr = e^{it}(R1 e^{q} + R2 e^{-u})``, which keeps double-exponential
growth representable.  Near zeros of ``F`` the ``e^{-u}`` term blows up, so
while ``|F|`` is small the integrator switches to ``F`` itself and
continues the branch of ``Im u`` by unwrapping the phase step by step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _parallel
from .algebra import Poly, as_poly, as_ratfunc, complex_roots
from .errors import PoleOnRay, StepCollapse
from .indicator import sector_map, shrunk_sector

__all__ = ["RayTrace", "GrowthFit", "SectorSummary", "DichotomyReport", "integrate_ray", "fit_growth",
           "classify", "dichotomy_report", "default_r0", "trace_residual"]

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))

Q_BUDGET = 700.0
U_BUDGET = 1e250
# |F| below e^{-1} switches to direct F integration, above e^{2} back to log form
_TO_F = -1.0
_TO_U = 2.0


class _Budget(Exception):
    pass


def _horner(cs, z):
    acc = 0j
    for c in reversed(cs):
        acc = acc * z + c
    return acc


class _Field:
    def __init__(self, R1, R2, q, theta: float):
        R1, R2 = as_ratfunc(R1), as_ratfunc(R2)
        self.r1n, self.r1d = R1.num.complex_coeffs(), R1.den.complex_coeffs()
        self.r2n, self.r2d = R2.num.complex_coeffs(), R2.den.complex_coeffs()
        self.qc = as_poly(q).complex_coeffs() or [0j]
        self.e = cmath.exp(1j * theta)

    def parts(self, r: float):
        z = r * self.e
        qz = _horner(self.qc, z)
        if qz.real > Q_BUDGET:
            raise _Budget
        a = _horner(self.r1n, z) / _horner(self.r1d, z) * cmath.exp(qz)
        b = _horner(self.r2n, z) / _horner(self.r2d, z)
        return a, b

    def du(self, r: float, u: complex) -> complex:
        a, b = self.parts(r)
        return self.e * (a + b * cmath.exp(-u)) if b else self.e * a

    def dF(self, r: float, F: complex) -> complex:
        a, b = self.parts(r)
        return self.e * (a * F + b)


def _dp_step(f, r: float, y: complex, h: float, k1: complex):
    ks = [k1]
    for i in range(1, 7):
        yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
        ks.append(f(r + _C[i] * h, yi))
    y5 = y + h * sum(b * k for b, k in zip(_B5, ks))
    err = h * sum(e * k for e, k in zip(_E, ks))
    return y5, err, ks[6]


@dataclass
class GrowthFit:
    r_lo: float
    r_hi: float
    poly_exponent: float | None  # slope of log|F| against log r
    exp_rate: float | None  # slope of log log|F| against r
    order: float | None  # slope of log log|F| against log r


@dataclass
class RayTrace:
    theta: float
    F0: complex
    r0: float
    r_values: np.ndarray
    logF: np.ndarray
    status: str = ""
    stopped_at: float | None = None
    steps: int = 0
    rejected: int = 0
    switches: int = 0
    zero_crossings: int = 0
    fit: GrowthFit | None = None

    @property
    def log_abs(self) -> np.ndarray:
        return self.logF.real

    def fit_window(self, r_lo: float, r_hi: float) -> GrowthFit:
        return fit_growth(self, r_lo, r_hi)


def default_r0(R1, R2) -> float:
    """``2 * (largest modulus of a pole or zero of R1, R2) + 1``."""
    mods = [0.0]
    for R in (as_ratfunc(R1), as_ratfunc(R2)):
        for p in (R.num, R.den):
            if p.degree >= 1:
                mods.extend(abs(x) for x in complex_roots(p))
    return 2.0 * max(mods) + 1.0


def _check_poles(R1, R2, theta: float, r0: float, r_max: float) -> None:
    e = cmath.exp(1j * theta)
    for R in (as_ratfunc(R1), as_ratfunc(R2)):
        if R.den.degree < 1:
            continue
        for a in complex_roots(R.den):
            s = min(max((a * e.conjugate()).real, r0), r_max)
            if abs(a - s * e) < 0.1:
                raise PoleOnRay(f"pole {a:.6g} lies within 0.1 of the ray at angle {theta:.6g}")


def integrate_ray(
    R1,
    R2,
    q,
    theta: float,
    F0: complex,
    r0: float | None = None,
    r_max: float = 25.0,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    dr_out: float = 0.01,
    max_steps: int = 1_000_000,
) -> RayTrace:
    """Integrate from ``r0 e^{it}`` (where ``F = F0``) out to ``r_max``.

    Output is sampled on the grid ``r0 + j*dr_out``; steps land on it
    exactly.  Integration stops early with status ``overflow_stopped`` once
    ``Re q`` exceeds 700 or ``Re u`` exceeds 1e250.
    """
    F0 = complex(F0)
    if F0 == 0:
        raise ValueError("F0 must be nonzero")
    if r0 is None:
        r0 = default_r0(R1, R2)
    if r_max <= r0:
        raise ValueError(f"r_max = {r_max} must exceed r0 = {r0}")
    _check_poles(R1, R2, theta, r0, r_max)
    fld = _Field(R1, R2, q, theta)
    n_out = int(math.floor((r_max - r0) / dr_out + 1e-9))
    grid = [r0 + j * dr_out for j in range(n_out + 1)]
    if grid[-1] < r_max - 1e-12:
        grid.append(r_max)

    u = cmath.log(F0)
    mode = "F" if u.real < _TO_F else "u"
    y = F0 if mode == "F" else u
    phase = u.imag
    rs, us = [r0], [u]
    r = r0
    h = min(dr_out, 1e-2)
    steps = rejected = switches = crossings = 0
    stopped = None
    nxt = 1
    try:
        f = fld.dF if mode == "F" else fld.du
        k1 = f(r, y)
        while nxt < len(grid):
            if steps + rejected > max_steps:
                raise StepCollapse(f"step budget exhausted at r = {r:.6g}")
            target = grid[nxt]
            h_try = min(h, target - r)
            land = h_try >= target - r - 1e-14
            y_new, err, k7 = _dp_step(f, r, y, h_try, k1)
            scale = atol + rtol * max(abs(y), abs(y_new))
            en = abs(err) / scale if np.isfinite(abs(y_new)) else math.inf
            dphase = 0.0
            if en <= 1.0:
                if mode == "F":
                    dphase = cmath.phase(y_new / y) if y_new != 0 and y != 0 else 0.0
                else:
                    dphase = y_new.imag - y.imag
                if abs(dphase) >= math.pi / 2:
                    if mode == "F" and h_try <= 1e-7 * (1 + r):
                        # F passes (numerically) through zero; the branch jump is taken as is
                        crossings += 1
                    else:
                        en = 2.0  # keep branch tracking unambiguous
            if en > 1.0:
                rejected += 1
                h = h_try * max(0.2, 0.9 * en ** -0.2) if np.isfinite(en) else h_try * 0.2
                if h < 1e-13 * (1 + abs(r)):
                    raise StepCollapse(f"step size collapsed at r = {r:.6g}")
                continue
            steps += 1
            r = target if land else r + h_try
            y, k1 = y_new, k7
            if mode == "F":
                phase += dphase
                cur = complex(math.log(abs(y)) if y != 0 else -math.inf, phase)
            else:
                cur = y
            if land:
                rs.append(r)
                us.append(cur)
                nxt += 1
            if mode == "u" and y.real > U_BUDGET:
                raise _Budget
            # mode switches
            if mode == "u" and y.real < _TO_F:
                mode, y, phase = "F", cmath.exp(y), y.imag
                f = fld.dF
                k1 = f(r, y)
                switches += 1
            elif mode == "F" and y != 0 and math.log(abs(y)) > _TO_U:
                mode, y = "u", complex(math.log(abs(y)), phase)
                f = fld.du
                k1 = f(r, y)
                switches += 1
            h = h_try * min(5.0, max(0.2, 0.9 * en ** -0.2)) if en > 0 else h_try * 5.0
    except _Budget:
        stopped = r
    trace = RayTrace(theta, F0, r0, np.array(rs), np.array(us), stopped_at=stopped,
                     steps=steps, rejected=rejected, switches=switches,
                     zero_crossings=crossings)
    trace.status = classify(trace)
    return trace


def _slope(x, y) -> float:
    return float(np.polyfit(x, y, 1)[0])


def fit_growth(trace: RayTrace, r_lo: float, r_hi: float) -> GrowthFit:
    rv = trace.r_values
    mask = (rv >= r_lo - 1e-9) & (rv <= r_hi + 1e-9)
    r = rv[mask]
    la = trace.logF.real[mask]
    if r.size < 3:
        return GrowthFit(r_lo, r_hi, None, None, None)
    poly = _slope(np.log(r), la)
    rate = order = None
    if np.all(la > 1.0):
        ll = np.log(la)
        rate = _slope(r, ll)
        order = _slope(np.log(r), ll)
    return GrowthFit(r_lo, r_hi, poly, rate, order)


def classify(trace: RayTrace, *, poly_cap: float = 6.0, rate_floor: float = 0.5) -> str:
    """Status from the upper half of the computed range."""
    if trace.stopped_at is not None:
        trace.fit = fit_growth(trace, 0.5 * (trace.r0 + trace.stopped_at), trace.stopped_at)
        return "overflow_stopped"
    r_end = float(trace.r_values[-1])
    fit = fit_growth(trace, 0.5 * (trace.r0 + r_end), r_end)
    trace.fit = fit
    final = float(trace.logF[-1].real)
    if fit.poly_exponent is None:
        return "polynomially_bounded"
    if final < -1.0 and fit.poly_exponent < 0:
        return "decayed"
    if fit.exp_rate is not None and fit.exp_rate >= rate_floor:
        return "super_exponential"
    if fit.poly_exponent > poly_cap:
        return "finite_order_growth"
    return "polynomially_bounded"


def trace_residual(trace: RayTrace, R1, R2, q) -> float:
    """Max of ``|u' - rhs(u)| / (1 + |u'|)`` with ``u'`` from 4th-order differences.

    Points where ``|F| < 1`` are skipped, as are the two samples at each end.
    """
    fld = _Field(R1, R2, q, trace.theta)
    r, u = trace.r_values, trace.logF
    if r.size < 5:
        return 0.0
    worst = 0.0
    for i in range(2, r.size - 2):
        if u[i].real < 0:
            continue
        hs = np.diff(r[i - 2:i + 3])
        if np.max(np.abs(hs - hs[0])) > 1e-9 * max(1.0, hs[0]):
            continue
        h = hs[0]
        du = (u[i - 2] - 8 * u[i - 1] + 8 * u[i + 1] - u[i + 2]) / (12 * h)
        rhs = fld.du(float(r[i]), complex(u[i]))
        worst = max(worst, abs(du - rhs) / (1 + abs(du)))
    return worst


@dataclass
class SectorSummary:
    sector: int | None
    theta: float
    growth: bool | None
    statuses: list
    poly_exponents: list
    flagged: bool
    within_bound: bool | None
    traces: list = field(default_factory=list, repr=False)


@dataclass
class DichotomyReport:
    n2: int
    bound: int
    constant_q: bool
    sectors: list
    flagged: bool
    notes: list = field(default_factory=list)


def _poly_part_degree(R) -> int:
    R = as_ratfunc(R)
    part = R.num // R.den
    return max(part.degree, 0)


def dichotomy_report(
    R1,
    R2,
    q,
    epsilon: float = 0.1,
    r_max: float = 25.0,
    F0s: Sequence[complex] = (1, 1 + 1j, -2),
    r0: float | None = None,
    **kw,
) -> DichotomyReport:
    """Integrate the central ray of every shrunk sector of ``q`` for each ``F0``.

    A ray is flagged when every initial value gives ``super_exponential``
    growth.  In decay sectors the fitted polynomial exponent is compared
    with ``n2 + 2``.  For constant ``q`` eight equally spaced rays are used.
    """
    q = as_poly(q)
    n2 = _poly_part_degree(R2)
    if r0 is None:
        r0 = default_r0(R1, R2)
    if q.degree < 1:
        rays = [(None, 2 * math.pi * j / 8, None) for j in range(8)]
    else:
        smap = sector_map(q)
        rays = []
        for j in range(2 * smap.k):
            s = shrunk_sector(smap, j, epsilon)
            rays.append((j, s.center % (2 * math.pi), smap.sign[j] > 0))
    jobs = [(ray, F0) for ray in rays for F0 in F0s]
    traces = _parallel.pmap(lambda job: integrate_ray(R1, R2, q, job[0][1], job[1], r0, r_max, **kw), jobs)
    sectors = []
    per = len(F0s)
    for idx, (j, theta, growth) in enumerate(rays):
        ts = traces[idx * per:(idx + 1) * per]
        statuses = [t.status for t in ts]
        expo = [t.fit.poly_exponent if t.fit else None for t in ts]
        flagged = all(s == "super_exponential" for s in statuses)
        within = None
        if growth is False:
            within = all(e is not None and e <= n2 + 2 for e in expo)
        sectors.append(SectorSummary(j, theta, growth, statuses, expo, flagged, within, ts))
    flagged = any(s.flagged for s in sectors)
    notes = []
    if flagged:
        notes.append("super-exponential growth for generic initial values: no finite-order solution with this q")
    return DichotomyReport(n2, n2 + 2, q.degree < 1, sectors, flagged, notes)
