"""The entire function ``H(z) = e^{p(z)} int_0^z beta(t) e^{-p(t)} dt``.

``H`` is the particular solution of ``f' - p' f = beta`` vanishing at the
origin.  Every integral here is taken of the rescaled integrand
``beta(t) exp(p(z) - p(t))``: the exponent difference is formed before
exponentiating, so values of ``H`` that are representable are computed
even where ``e^{p(z)}`` and the bare integral are not.

In a growth sector of ``p`` (indicator positive), ``H`` tracks
``a_j e^{p}`` where ``a_j`` is the full-ray integral of ``beta e^{-p}``.
The remainder ``H - a_j e^p`` equals ``-int_z^{infinity} beta(t)
e^{p(z)-p(t)} dt`` along the outward ray, and is evaluated that way.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _parallel
from .algebra import Poly, as_poly, eval_complex
from .errors import Overflow, ToleranceNotMet
from .expoly import EXP_BUDGET, ExpPoly, as_exppoly
from .indicator import sector_map, shrunk_sector
from .quadrature import gk_adaptive

__all__ = [
    "HEvalConfig",
    "AsymptoticReport",
    "eval_H",
    "h_remainder",
    "asymptotic_constant",
    "verify_theorem0",
    "solve_first_order",
    "FirstOrderSolution",
]


@dataclass(frozen=True)
class HEvalConfig:
    abs_tol: float = 1e-300
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    path: str = "segment"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")
        if self.path not in ("segment", "two_leg_via_circle"):
            raise ValueError(f"unknown path {self.path!r}")


DEFAULT_CONFIG = HEvalConfig()


class _Integrand:
    """Vectorized ``beta(t) * exp(shift - p(t))`` for ``beta`` an ExpPoly."""

    def __init__(self, p: Poly, beta):
        self.p = as_poly(p)
        self.beta = as_exppoly(beta)
        self.pc = self.p.complex_coeffs()

    def p_at(self, t):
        return eval_complex(self.p, t)

    def exponents(self, t, shift: complex):
        """List of ``(coeff(t), exponent(t))`` arrays, one per beta term."""
        pt = self.p_at(t)
        out = []
        for term in self.beta.terms:
            a = eval_complex(term.coeff, t)
            q = eval_complex(term.exponent, t) if not term.exponent.is_zero() else 0.0
            out.append((a, q + shift - pt))
        return out

    def __call__(self, t, shift: complex = 0j, offset: float = 0.0):
        total = np.zeros_like(t, dtype=complex)
        for a, e in self.exponents(t, shift):
            total = total + a * np.exp(e - offset)
        return total

    def log_magnitude(self, t, shift: complex = 0j):
        """Upper envelope ``max_j log|a_j| + Re(exponent_j)`` (no overflow)."""
        best = np.full(np.shape(t), -np.inf)
        with np.errstate(divide="ignore"):
            for a, e in self.exponents(t, shift):
                best = np.maximum(best, np.log(np.abs(a)) + np.real(e))
        return best


def _offset(mags) -> float:
    finite = mags[np.isfinite(mags)]
    return float(np.max(finite)) if finite.size else 0.0


def _scaled_tol(abs_tol: float, offset: float) -> float:
    return abs_tol * math.exp(min(max(-offset, -700.0), 700.0))


def _segment_integral(fn: _Integrand, start: complex, end: complex, shift: complex, cfg: HEvalConfig):
    """Return ``(I, offset)`` with the true integral equal to ``I * exp(offset)``."""
    d = end - start
    probe = start + d * np.linspace(0.0, 1.0, 65)
    offset = _offset(fn.log_magnitude(probe, shift))

    def f(s):
        return fn(start + d * s, shift, offset) * d

    res = gk_adaptive(f, 0.0, 1.0, rel_tol=cfg.rel_tol, abs_tol=_scaled_tol(cfg.abs_tol, offset),
                      max_subdivisions=cfg.max_subdivisions)
    return res.value, offset


def _arc_integral(fn: _Integrand, radius: float, phi0: float, phi1: float, shift: complex, cfg: HEvalConfig):
    probe_phi = np.linspace(phi0, phi1, 65)
    offset = _offset(fn.log_magnitude(radius * np.exp(1j * probe_phi), shift))
    span = phi1 - phi0

    def f(s):
        phi = phi0 + span * s
        t = radius * np.exp(1j * phi)
        return fn(t, shift, offset) * 1j * t * span

    res = gk_adaptive(f, 0.0, 1.0, rel_tol=cfg.rel_tol, abs_tol=_scaled_tol(cfg.abs_tol, offset),
                      max_subdivisions=cfg.max_subdivisions)
    return res.value, offset


def _combine(pieces) -> complex:
    top = max(off for _, off in pieces)
    total = sum(val * math.exp(off - top) for val, off in pieces)
    if total == 0:
        return 0j
    if top + math.log(abs(total)) > EXP_BUDGET:
        raise Overflow("H(z) is not representable in double precision")
    return total * math.exp(top)


def eval_H(p: Poly, beta, z: complex, cfg: HEvalConfig = DEFAULT_CONFIG) -> complex:
    """``H(z) = int_0^z beta(t) exp(p(z) - p(t)) dt`` by adaptive quadrature."""
    z = complex(z)
    if z == 0:
        return 0j
    fn = _Integrand(p, beta)
    if fn.beta.is_zero():
        return 0j
    shift = complex(fn.p_at(z))
    if cfg.path == "segment":
        return _combine([_segment_integral(fn, 0j, z, shift, cfg)])
    radius = abs(z)
    pieces = [_segment_integral(fn, 0j, complex(radius), shift, cfg)]
    phi = cmath.phase(z)
    if phi != 0.0:
        pieces.append(_arc_integral(fn, radius, 0.0, phi, shift, cfg))
    return _combine(pieces)


def _ray_tail(fn: _Integrand, start: complex, direction: complex, shift: complex, cfg: HEvalConfig,
              r_cap_factor: float = 1e6) -> complex:
    """``int_start^{infinity} beta(t) exp(shift - p(t)) dt`` along ``start + s*direction``.

    Segments double in length until the tail bound, from the local decay
    rate of the integrand envelope, drops below tolerance.
    """
    # initial length from the local decay rate of exp(-p)
    dp = abs(complex(eval_complex(fn.p.derivative(), start))) if fn.p.degree > 0 else 1.0
    length = 1.0 / max(dp, 1e-3)
    length = min(max(length, 1e-3), 1.0 + abs(start))
    total = 0j
    pos = 0.0
    h = 1e-6
    segments = 0
    while True:
        a = start + pos * direction
        b = start + (pos + length) * direction
        val, off = _segment_integral(fn, a, b, shift, cfg)
        total += val * math.exp(off) if off < EXP_BUDGET else float("inf")
        pos += length
        segments += 1
        # envelope and its slope at the new end point
        end = start + pos * direction
        m0 = float(fn.log_magnitude(np.array([end]), shift)[0])
        m1 = float(fn.log_magnitude(np.array([end + h * (1 + pos) * direction]), shift)[0])
        rate = -(m1 - m0) / (h * (1 + pos))
        bound = math.exp(m0) / rate if rate > 0 else float("inf")
        tol = max(cfg.abs_tol, 0.1 * cfg.rel_tol * abs(total))
        if rate > 0 and bound <= tol:
            return total
        if pos > r_cap_factor * (1.0 + abs(start)) or segments > 200:
            raise ToleranceNotMet("ray integral did not converge; the integrand does not decay on this ray")
        length *= 2.0


def asymptotic_constant(p: Poly, beta, sector: int, cfg: HEvalConfig = DEFAULT_CONFIG) -> complex:
    """Full-ray integral of ``beta e^{-p}`` along the central ray of a growth sector."""
    smap = sector_map(p)
    if smap.sign[sector] <= 0:
        raise ValueError(f"sector {sector} is not a growth sector of {p}")
    fn = _Integrand(p, beta)
    if fn.beta.is_zero():
        return 0j
    direction = cmath.exp(1j * smap.center(sector))
    return _ray_tail(fn, 0j, direction, 0j, cfg)


def h_remainder(p: Poly, beta, z: complex, cfg: HEvalConfig = DEFAULT_CONFIG) -> complex:
    """``H(z) - a e^{p(z)}`` for ``z`` in a growth sector, via the outward tail."""
    z = complex(z)
    fn = _Integrand(p, beta)
    if fn.beta.is_zero():
        return 0j
    shift = complex(fn.p_at(z))
    return -_ray_tail(fn, z, z / abs(z), shift, cfg)


@dataclass
class AsymptoticReport:
    sector: int
    growth: bool
    a: complex | None
    radii: list[float]
    rays: list[float]
    s_values: list[float]
    s_by_ray: dict[float, list[float]] = field(default_factory=dict)
    rho: float | None = None
    eta: float | None = None
    eta_values: list[float | None] = field(default_factory=list)
    direct_check: float | None = None
    remainders: dict[float, list[complex]] = field(default_factory=dict, repr=False)

    @property
    def max_abs_s(self) -> float:
        return max(abs(s) for s in self.s_values)

    @property
    def trend(self) -> float:
        return self.s_values[-1] - self.s_values[0]


def _beta_order(beta: ExpPoly) -> int:
    return max((t.exponent.degree for t in beta.terms), default=0) if beta.terms else 0


def verify_theorem0(
    p: Poly,
    beta,
    cfg: HEvalConfig = DEFAULT_CONFIG,
    radii: Sequence[float] = (5.0, 10.0, 15.0, 20.0),
    epsilon: float = 0.1,
    *,
    decay_constant: complex = 0j,
    rays_per_sector: int = 3,
    sectors: Sequence[int] | None = None,
) -> list[AsymptoticReport]:
    """Sector-by-sector growth of ``H - a e^p`` on shrunk-sector rays.

    ``s(r) = log|H - a e^p| / r^k`` is reported as the maximum over the
    rays of each sector.  In growth sectors ``a`` is the full-ray
    constant; in decay sectors it is ``decay_constant``.
    """
    p = as_poly(p)
    beta = as_exppoly(beta)
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    smap = sector_map(p)
    k = smap.k
    rho = float(max(_beta_order(beta), k - 1))
    eta = 0.5 * (rho + k) if rho < k else None
    chosen = range(2 * k) if sectors is None else sectors

    def one_sector(j: int) -> AsymptoticReport:
        growth = smap.sign[j] > 0
        rays = shrunk_sector(smap, j, epsilon).rays(rays_per_sector)
        a = asymptotic_constant(p, beta, j, cfg) if growth else complex(decay_constant)
        by_ray: dict[float, list[float]] = {}
        rems: dict[float, list[complex]] = {}
        logs_max = []
        for theta in rays:
            u = cmath.exp(1j * theta)
            vals = []
            rems[theta] = []
            for r in radii:
                z = r * u
                if growth:
                    rem = h_remainder(p, beta, z, cfg)
                else:
                    rem = eval_H(p, beta, z, cfg) - a * cmath.exp(complex(eval_complex(p, z)))
                rems[theta].append(rem)
                vals.append(math.log(abs(rem)) if rem != 0 else -math.inf)
            by_ray[theta] = [v / r**k for v, r in zip(vals, radii)]
            logs_max.append(vals)
        logs = [max(col) for col in zip(*logs_max)]
        s_values = [max(col) for col in zip(*by_ray.values())]
        eta_values = []
        if eta is not None:
            for lg, r in zip(logs, radii):
                eta_values.append(math.log(lg) / math.log(r) if lg > 1 else None)
        direct = None
        if growth:
            z0 = radii[0] * cmath.exp(1j * smap.center(j))
            ep = cmath.exp(complex(eval_complex(p, z0)))
            if abs(ep) < 1e8:
                direct = abs((eval_H(p, beta, z0, cfg) - a * ep) - h_remainder(p, beta, z0, cfg))
        return AsymptoticReport(j, growth, a if growth else complex(decay_constant), radii, rays, s_values,
                                by_ray, rho, eta, eta_values, direct, rems)

    return _parallel.pmap(one_sector, list(chosen))


@dataclass(frozen=True)
class FirstOrderSolution:
    """``f = c e^{p} + H`` solving ``f' - kappa f = beta`` with ``p = int kappa``."""

    kappa: Poly
    p: Poly
    beta: ExpPoly
    c: complex
    cfg: HEvalConfig

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        hom = self.c * cmath.exp(complex(eval_complex(self.p, z))) if self.c else 0j
        return hom + eval_H(self.p, self.beta, z, self.cfg)

    def residual(self, z: complex, h: float | None = None) -> tuple[float, float]:
        """``(|f' - kappa f - beta|, 1 + |f| + |beta|)`` with ``f'`` by central differences."""
        z = complex(z)
        h = 1e-5 * (1 + abs(z)) if h is None else h
        fine = HEvalConfig(abs_tol=self.cfg.abs_tol, rel_tol=min(self.cfg.rel_tol, 1e-14),
                           max_subdivisions=max(self.cfg.max_subdivisions, 4000), path=self.cfg.path)
        sol = FirstOrderSolution(self.kappa, self.p, self.beta, self.c, fine)
        df = (sol(z + h) - sol(z - h)) / (2 * h)
        fz = sol(z)
        bz = complex(self.beta(z))
        kz = complex(eval_complex(self.kappa, z))
        return abs(df - kz * fz - bz), 1 + abs(fz) + abs(bz)


def solve_first_order(kappa: Poly, beta, c: complex = 0j, cfg: HEvalConfig = DEFAULT_CONFIG) -> FirstOrderSolution:
    kappa = as_poly(kappa)
    if kappa.is_zero():
        raise ValueError("kappa must be a nonzero polynomial")
    return FirstOrderSolution(kappa, kappa.antiderivative(), as_exppoly(beta), complex(c), cfg)
