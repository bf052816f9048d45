"""Proximity function, characteristic and growth-order fits for entire ExpPoly inputs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _parallel
from .algebra import complex_roots
from .errors import InsufficientData, InvalidProblem, PoleOnCircle
from .expoly import ExpPoly, ExpTerm, as_exppoly
from .algebra import Poly, as_poly, as_ratfunc

__all__ = [
    "GrowthCurve",
    "SteinmetzReport",
    "proximity",
    "characteristic",
    "order_fit",
    "steinmetz_check",
    "steinmetz_oracle",
]

DEFAULT_SAMPLES = 2048
MAX_SAMPLES = 1 << 16


@dataclass
class GrowthCurve:
    radii: list
    T_values: list
    fitted_order: float | None = None
    fitted_constant: float | None = None


def _check_circle(f: ExpPoly, r: float) -> None:
    for t in f.terms:
        den = t.coeff.den
        if den.degree < 1:
            continue
        for root in complex_roots(den):
            if abs(abs(root) - r) <= 1e-9 * max(1.0, r):
                raise PoleOnCircle(f"coefficient {t.coeff} has a pole at {root:.6g} on |z| = {r}")


def _mean_log_plus(f: ExpPoly, r: float, samples: int) -> float:
    theta = 2 * np.pi * np.arange(samples) / samples
    with np.errstate(invalid="ignore"):
        vals = f.log_abs(r * np.exp(1j * theta))
    vals = np.where(np.isnan(vals), 0.0, vals)
    return float(np.mean(np.maximum(vals, 0.0)))


def proximity(f, r: float, samples: int | None = None) -> float:
    """``(1/2pi) int log+|f(r e^{it})| dt`` by the trapezoid rule.

    With ``samples=None`` the node count starts at 2048 and doubles until
    the relative change drops below 1e-3.
    """
    f = as_exppoly(f)
    if r <= 0:
        raise ValueError("r must be positive")
    _check_circle(f, r)
    if samples is not None:
        if samples < 8:
            raise ValueError("need at least 8 samples")
        return _mean_log_plus(f, r, samples)
    n = DEFAULT_SAMPLES
    prev = _mean_log_plus(f, r, n)
    while n < MAX_SAMPLES:
        n *= 2
        cur = _mean_log_plus(f, r, n)
        if abs(cur - prev) <= 1e-3 * max(abs(cur), 1e-300):
            return cur
        prev = cur
    return prev


def characteristic(f, radii: Sequence[float], samples: int | None = None) -> GrowthCurve:
    """``T(r, f) = m(r, f)`` at each radius; ``f`` must have polynomial coefficients."""
    f = as_exppoly(f)
    if not f.has_polynomial_coefficients():
        raise InvalidProblem("T = m needs an entire input; coefficients must be polynomials")
    radii = [float(r) for r in radii]
    values = _parallel.pmap(lambda r: proximity(f, r, samples), radii)
    return GrowthCurve(radii, values)


def order_fit(curve: GrowthCurve) -> tuple[float, float]:
    """Slope of ``log T`` against ``log r`` over the upper half of the radii."""
    pairs = sorted(zip(curve.radii, curve.T_values))
    if len(pairs) < 5:
        raise InsufficientData(f"need at least 5 radii, got {len(pairs)}")
    if pairs[-1][0] < 10 * pairs[0][0]:
        raise InsufficientData("radii must span at least a decade")
    top = pairs[len(pairs) // 2:]
    r = np.array([p[0] for p in top])
    T = np.array([p[1] for p in top])
    if np.any(T <= 0):
        order, const = 0.0, float(np.mean(T))
    else:
        order = float(np.polyfit(np.log(r), np.log(T), 1)[0])
        const = float(np.mean(T / r**order))
    curve.fitted_order, curve.fitted_constant = order, const
    return order, const


def steinmetz_oracle(p1, p2, samples: int = 4096) -> float:
    """``(1/2pi) int max(delta1, delta2, 0) dt`` from the leading terms alone."""
    p1, p2 = as_poly(p1), as_poly(p2)
    k = p1.degree
    theta = 2 * np.pi * np.arange(samples) / samples
    d1 = np.real(complex(p1.lead()) * np.exp(1j * k * theta))
    d2 = np.real(complex(p2.lead()) * np.exp(1j * k * theta))
    return float(np.mean(np.maximum(np.maximum(d1, d2), 0.0)))


@dataclass
class SteinmetzReport:
    r: float
    C: float
    C_plain: float
    oracle: float
    rel_error: float
    C_scaled_b1: float
    shift_scaled_b1: float
    C_leading_only: float
    shift_leading_only: float
    agrees: bool
    notes: list = field(default_factory=list)


def _pair(b1, b2, p1, p2) -> ExpPoly:
    return ExpPoly([ExpTerm(as_ratfunc(b1), as_poly(p1)), ExpTerm(as_ratfunc(b2), as_poly(p2))])


def _secant_C(f: ExpPoly, r: float, k: int, samples: int | None) -> tuple[float, float]:
    """Least-squares ``T = C r^k + a log r + b`` on ``[r/2, r]``; returns ``(C, T(r)/r^k)``.

    The ``log r`` and constant columns absorb the contribution of the
    polynomial coefficients, which a plain ratio ``T(r)/r^k`` keeps.
    """
    rs = np.linspace(r / 2, r, 5)
    Ts = np.array([proximity(f, x, samples) for x in rs])
    M = np.column_stack([rs**k, np.log(rs), np.ones_like(rs)])
    sol = np.linalg.lstsq(M, Ts, rcond=None)[0]
    return float(sol[0]), float(Ts[-1] / r**k)


def steinmetz_check(b1, b2, p1, p2, r: float = 50.0, samples: int | None = None, tol: float = 0.03) -> SteinmetzReport:
    """Measure ``C`` in ``T(r, b1 e^{p1} + b2 e^{p2}) ~ C r^k``.

    ``C`` comes from a fit on ``[r/2, r]`` with ``log r`` and constant
    columns, so the ``log|b_j|`` contributions do not leak into it.  It is compared with the
    leading-term oracle, with ``b1`` scaled by 100 and with the lower-order
    terms of ``p1, p2`` removed.
    """
    b1, b2, p1, p2 = (as_poly(x) for x in (b1, b2, p1, p2))
    if p1.degree != p2.degree or p1.degree < 1:
        raise InvalidProblem("p1 and p2 must share a degree k >= 1")
    if p1.lead() == p2.lead():
        raise InvalidProblem("leading coefficients must differ")
    k = p1.degree
    C, plain = _secant_C(_pair(b1, b2, p1, p2), r, k, samples)
    oracle = steinmetz_oracle(p1, p2)
    C_scaled, _ = _secant_C(_pair(b1 * 100, b2, p1, p2), r, k, samples)
    lead1 = Poly.monomial(k, p1.lead())
    lead2 = Poly.monomial(k, p2.lead())
    C_lead, _ = _secant_C(_pair(b1, b2, lead1, lead2), r, k, samples)
    rel = abs(C - oracle) / oracle
    shift_b = abs(C_scaled - C) / abs(C)
    shift_l = abs(C_lead - C) / abs(C)
    notes = []
    if rel > tol:
        notes.append(f"C differs from the oracle by {100 * rel:.2f}%")
    return SteinmetzReport(r, C, plain, oracle, rel, C_scaled, shift_b, C_lead, shift_l,
                           rel <= tol and shift_b <= tol and shift_l <= tol, notes)
