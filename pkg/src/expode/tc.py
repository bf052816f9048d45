"""Entire solutions of ``f^n + P(z, f) = b1 e^{p1} + b2 e^{p2}``.

Witnesses are built in closed form and checked in exact arithmetic.  With
``alpha = lead(p2)/lead(p1)``:

* ``alpha = -1``: ``f = g1 e^{p1/n} + g2 e^{p2/n}`` with ``gi^n = bi``;
  the cross terms of ``f^n`` form the residual.
* ``0 < alpha < 1`` rational: ``f = g1 sum_j c_j (b2/b1)^j e^{t_j p1}``
  with ``t_j = j(alpha-1) + 1/n`` and ``j <= m`` where ``m`` is the
  smallest integer with ``alpha <= ((m+1)n-1)/((m+1)n)``.

A residual is admissible when each of its exponents grows at most like
``(n-1)/n`` times ``p1``, so that it can be absorbed into a differential
polynomial of degree at most ``n-1`` in ``f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import GaussianRational, Poly, RatFunc, as_gq, as_poly, as_ratfunc, poly_nth_root
from .errors import (
    DegreeMismatch,
    InvalidProblem,
    NonRationalExponent,
    NonRealAlpha,
    P2NotProportional,
    VerificationFailed,
)
from .expoly import ExpPoly, ExpTerm, as_exppoly

__all__ = [
    "TCProblem",
    "TCWitness",
    "TCReport",
    "KappaIota",
    "smallest_m",
    "multinomial_C",
    "solve_coefficients",
    "exponent_factor",
    "construct_case1",
    "construct_case2",
    "construct",
    "verify_tc",
    "kappa_iota",
]


@dataclass(frozen=True)
class TCProblem:
    n: int
    b1: Poly
    b2: Poly
    p1: Poly
    p2: Poly

    def __post_init__(self):
        for name in ("b1", "b2", "p1", "p2"):
            object.__setattr__(self, name, as_poly(getattr(self, name)))
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidProblem(f"n must be an integer >= 2, got {self.n}")
        if self.b1.is_zero() or self.b2.is_zero():
            raise InvalidProblem("b1 and b2 must be nonzero")
        if self.p1.degree < 1:
            raise InvalidProblem("p1 must be nonconstant")
        if self.p1.degree != self.p2.degree:
            raise DegreeMismatch(f"deg p1 = {self.p1.degree} but deg p2 = {self.p2.degree}")
        if self.p1.constant_term() or self.p2.constant_term():
            raise InvalidProblem("p1 and p2 must vanish at 0")
        a = self.alpha
        if not a.is_real():
            raise NonRealAlpha(f"alpha = {a} is not real; solutions require a real rational alpha")
        if a == 1:
            raise InvalidProblem("leading coefficients of p1 and p2 must differ")
        if a.norm() > 1:
            raise InvalidProblem(f"|alpha| = |{a}| exceeds 1; swap the two terms")

    @classmethod
    def from_alpha(cls, n: int, alpha, b1, b2, p1, p2=None) -> "TCProblem":
        """Problem with ``p2 = alpha*p1`` unless ``p2`` is given explicitly."""
        alpha = as_gq(alpha)
        p1 = as_poly(p1)
        if p2 is None:
            p2 = p1 * alpha
        prob = cls(n, b1, b2, p1, p2)
        if prob.alpha != alpha:
            raise InvalidProblem(f"lead(p2)/lead(p1) = {prob.alpha} differs from alpha = {alpha}")
        return prob

    @property
    def k(self) -> int:
        return self.p1.degree

    @property
    def alpha(self) -> GaussianRational:
        return self.p2.lead() / self.p1.lead()

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n - 1, self.n)


@dataclass
class TCWitness:
    case: int
    n: int
    m: int
    gamma1: Poly
    c: list
    exponents: list  # t_j as Fractions (case 2) or (1/n, 1/n) scalings (case 1)
    f: ExpPoly
    residual: ExpPoly
    gamma2: Poly | None = None
    alpha_coefficient: RatFunc | None = None


@dataclass
class TCReport:
    ok: bool
    matched_b1: bool
    matched_b2: bool
    pole_free: bool
    factors: list
    bound: Fraction
    residual: ExpPoly
    P: ExpPoly
    numeric_max_rel: float
    messages: list = field(default_factory=list)


# -- scalar layer ---------------------------------------------------------------


def smallest_m(n: int, alpha) -> int:
    """Least ``m >= 0`` with ``alpha <= ((m+1)n - 1)/((m+1)n)``, exactly."""
    if n < 2:
        raise ValueError("n must be >= 2")
    a = _real_fraction(alpha)
    if not 0 < a < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {a}")
    # alpha <= 1 - 1/((m+1)n)  <=>  (m+1) >= 1/(n(1-alpha))
    need = Fraction(1) / (n * (1 - a))
    m = max(0, math.ceil(need) - 1)
    while m > 0 and a <= Fraction((m * n) - 1, m * n):
        m -= 1
    return m


def _real_fraction(x) -> Fraction:
    if isinstance(x, GaussianRational):
        if not x.is_real():
            raise NonRealAlpha(f"{x} is not real")
        return x.re
    return Fraction(x) if not isinstance(x, str) else Fraction(as_gq(x).re)


def multinomial_C(k0: int, n: int, c) -> GaussianRational:
    """``sum n!/(j_0!...j_m!) c_0^{j_0}...c_m^{j_m}`` over ``sum j_i = n``, ``sum i*j_i = k0``."""
    c = [as_gq(x) for x in c]
    m = len(c) - 1
    if k0 < 0 or k0 > m * n:
        raise ValueError(f"k0 must lie in [0, {m * n}]")
    total = GaussianRational(0)
    nfact = math.factorial(n)

    # walk the indices from m down, so the weight budget prunes early
    def rec(i: int, left: int, weight: int, coef: int, prod: GaussianRational):
        nonlocal total
        if i == 0:
            if weight == 0:
                total = total + prod * Fraction(nfact, coef * math.factorial(left)) * c[0] ** left
            return
        top = min(left, weight // i)
        for j in range(top + 1):
            rec(i - 1, left - j, weight - i * j, coef * math.factorial(j), prod * c[i] ** j if j else prod)

    rec(m, n, k0, 1, GaussianRational(1))
    return total


def solve_coefficients(n: int, m: int) -> list[GaussianRational]:
    """``c_0 = 1``, ``c_1 = 1/n`` and ``C_j = 0`` for ``2 <= j <= m``."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    c = [GaussianRational(1)]
    if m >= 1:
        c.append(GaussianRational(Fraction(1, n)))
    for j in range(2, m + 1):
        # C_j is n*c_0^{n-1}*c_j plus terms in c_0..c_{j-1}
        rest = multinomial_C(j, n, c + [GaussianRational(0)])
        c.append(-rest / n)
    return c


# -- exponent bookkeeping ---------------------------------------------------------


def exponent_factor(q: Poly, p1: Poly) -> Fraction:
    """Growth factor of ``e^q`` relative to ``e^{p1}``: ``lead(q)/lead(p1)`` at full degree, else 0."""
    if q.degree < p1.degree:
        return Fraction(0)
    if q.degree > p1.degree:
        raise InvalidProblem(f"exponent {q} outgrows p1")
    s = q.lead() / p1.lead()
    if not s.is_real():
        raise NonRationalExponent(f"exponent {q} is not a real multiple of p1 at leading order")
    return s.re


def _mixtures(prob: TCProblem) -> dict:
    n = prob.n
    return {(prob.p1 * j + prob.p2 * (n - j)) * Fraction(1, n): j for j in range(1, n)}


# -- constructions ---------------------------------------------------------------


def construct_case1(prob: TCProblem) -> TCWitness:
    if prob.alpha != -1:
        raise InvalidProblem(f"case 1 needs alpha = -1, got {prob.alpha}")
    n = prob.n
    g1 = poly_nth_root(prob.b1, n)
    g2 = poly_nth_root(prob.b2, n)
    e1 = prob.p1 * Fraction(1, n)
    e2 = prob.p2 * Fraction(1, n)
    f = ExpPoly([ExpTerm(as_ratfunc(g1), e1), ExpTerm(as_ratfunc(g2), e2)])
    residual = f**n - ExpPoly([ExpTerm(as_ratfunc(prob.b1), prob.p1), ExpTerm(as_ratfunc(prob.b2), prob.p2)])
    mixtures = _mixtures(prob)
    for t in residual.terms:
        if t.exponent not in mixtures:
            raise VerificationFailed(f"residual exponent {t.exponent} is not a mixture of p1/n and p2/n")
    return TCWitness(1, n, 0, g1, [GaussianRational(1), GaussianRational(1)],
                     [Fraction(1, n), Fraction(1, n)], f, residual, gamma2=g2)


def construct_case2(prob: TCProblem) -> TCWitness:
    a = prob.alpha
    if not a.is_real() or not 0 < a.re < 1:
        raise InvalidProblem(f"case 2 needs 0 < alpha < 1, got {a}")
    n = prob.n
    m = smallest_m(n, a.re)
    if m >= 1 and prob.p2 != prob.p1 * a:
        raise P2NotProportional(f"m = {m} >= 1 requires p2 = {a}*p1")
    g1 = poly_nth_root(prob.b1, n)
    c = solve_coefficients(n, m)
    ratio = RatFunc(prob.b2, prob.b1)
    ts = [(a.re - 1) * j + Fraction(1, n) for j in range(m + 1)]
    f = ExpPoly([ExpTerm(ratio**j * g1 * c[j], prob.p1 * t) for j, t in enumerate(ts)])
    target = ExpPoly([ExpTerm(as_ratfunc(prob.b1), prob.p1), ExpTerm(as_ratfunc(prob.b2), prob.p2)])
    fn = f**n
    residual = fn - target
    return TCWitness(2, n, m, g1, c, ts, f, residual, alpha_coefficient=fn.coeff(prob.p2))


def construct(prob: TCProblem) -> TCWitness:
    if prob.alpha == -1:
        return construct_case1(prob)
    return construct_case2(prob)


# -- verification ---------------------------------------------------------------


def _sample_points(count: int, seed: int = 7, radius: float = 2.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.random(count)) * np.exp(2j * np.pi * rng.random(count))


def verify_tc(witness: TCWitness, prob: TCProblem, gamma: ExpPoly | None = None, *, points: int = 10) -> TCReport:
    """Recompute ``(f + gamma)^n`` and certify the matched and residual parts.

    Raises :class:`VerificationFailed` naming the offending coefficient or
    exponent.
    """
    f = witness.f
    msgs = []
    if not f.has_polynomial_coefficients():
        raise VerificationFailed("f has a non-polynomial coefficient; denominators of b2/b1 do not cancel")
    if gamma is not None:
        gamma = as_exppoly(gamma)
        for t in gamma.terms:
            if t.exponent.degree >= prob.k:
                raise VerificationFailed(f"gamma exponent {t.exponent} is not of lower degree than p1")
        f = f + gamma
    n = prob.n
    fn = f**n
    c1 = fn.coeff(prob.p1)
    c2 = fn.coeff(prob.p2)
    ok1 = c1 == as_ratfunc(prob.b1)
    ok2 = c2 == as_ratfunc(prob.b2)
    if not ok1:
        raise VerificationFailed(f"coefficient of exp({prob.p1}) is {c1}, expected {prob.b1}")
    # a term no faster than the bound may be absorbed into P instead of matched
    if not ok2 and exponent_factor(prob.p2, prob.p1) > prob.bound:
        raise VerificationFailed(f"coefficient of exp({prob.p2}) is {c2}, expected {prob.b2}")
    target = ExpPoly([ExpTerm(as_ratfunc(prob.b1), prob.p1), ExpTerm(as_ratfunc(prob.b2), prob.p2)])
    residual = fn - target
    if gamma is None and residual != witness.residual:
        raise VerificationFailed("stored residual differs from the recomputed one")
    factors = []
    for t in residual.terms:
        s = exponent_factor(t.exponent, prob.p1)
        factors.append(s)
        if s > prob.bound:
            raise VerificationFailed(f"residual exponent {t.exponent} has factor {s} > {prob.bound}")
    # floating spot check of f^n = b1 e^{p1} + b2 e^{p2} + residual
    zs = _sample_points(points)
    lhs = f(zs) ** n
    rhs = target(zs) + residual(zs)
    scale = np.maximum(np.abs(lhs), np.abs(rhs)) + 1e-300
    rel = float(np.max(np.abs(lhs - rhs) / scale))
    if rel > 1e-8:
        raise VerificationFailed(f"numeric spot check failed: relative error {rel:.3g}")
    if witness.case == 2 and witness.alpha_coefficient is not None:
        msgs.append(f"coefficient of exp({prob.p2}) in f^n: {witness.alpha_coefficient}")
    return TCReport(True, ok1, ok2, True, factors, prob.bound, residual, -residual, rel, msgs)


# -- the iota / kappa sequences ----------------------------------------------------


@dataclass
class KappaIota:
    iota: list
    kappa: list
    D: list  # (iota_{j-1} or None, power of b1) describing D_j = iota_{j-1} b1^{1/n - j}
    t: list
    A1: RatFunc


def kappa_iota(prob: TCProblem, m: int) -> KappaIota:
    """``iota_j``, ``kappa_j`` and ``D_j`` for ``0 <= j <= m``, with exact self-checks."""
    n = prob.n
    b1, b2 = as_ratfunc(prob.b1), as_ratfunc(prob.b2)
    dp1 = as_ratfunc(prob.p1.derivative())
    B1 = b1.logarithmic_derivative() + dp1
    B2 = b2.logarithmic_derivative() + as_ratfunc(prob.p2.derivative())
    if B2 == B1:
        raise InvalidProblem("B2 - B1 vanishes identically")
    A1 = b1 * b2 * (B2 - B1)
    iota0 = A1 / (b1 * n)
    if iota0 != b2 * (B2 - B1) / n:
        raise VerificationFailed("iota_0 disagrees with b2 (B2 - B1)/n")
    a = prob.alpha.re if prob.alpha.is_real() else None
    if a is None:
        raise NonRealAlpha(f"alpha = {prob.alpha} is not real")
    lb1 = b1.logarithmic_derivative()
    iota, kappa, D, ts = [], [], [], []
    for j in range(m + 1):
        prod = 1
        for i in range(1, j + 1):
            prod *= i * n - 1
        iota.append(iota0 ** (j + 1) * ((-1) ** j * prod))
        t = (a - 1) * j + Fraction(1, n)
        ts.append(t)
        if j == 0:
            kappa.append(lb1 / n + dp1 / n)
            D.append((None, Fraction(1, n)))
        else:
            prev = iota[j - 1]
            kappa.append(prev.logarithmic_derivative() - lb1 * Fraction(j * n - 1, n) + dp1 * t)
            D.append((prev, Fraction(1, n) - j))
    for j in range(1, m + 1):
        if iota[j] != iota[j - 1] * iota0 * (-(j * n - 1)):
            raise VerificationFailed(f"iota_{j} breaks the recursion iota_j = -(jn-1) iota_(j-1) iota_0")
    # (log D_j)' via the rational function D_j^n = iota_{j-1}^n b1^{1 - jn}
    for j in range(m + 1):
        Dn = b1 if j == 0 else D[j][0] ** n * b1 ** (1 - j * n)
        if kappa[j] != Dn.logarithmic_derivative() / n + dp1 * ts[j]:
            raise VerificationFailed(f"kappa_{j} != (log D_{j})' + t_{j} p1'")
    return KappaIota(iota, kappa, D, ts, A1)
