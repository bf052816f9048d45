"""Growth directions of ``exp(p(z))``.

For ``p(z) = (a + ib) z^k + ...`` the indicator ``a cos(k t) - b sin(k t)``
controls whether ``|exp(p(r e^{it}))|`` grows or decays like
``exp(delta * r^k)``.  Its zeros split the plane into ``2k`` sectors of
opening ``pi/k`` with alternating signs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .algebra import GaussianRational, Poly, as_poly, scalar_nth_roots
from .errors import (
    ConstantPolynomial,
    DegreeMismatch,
    EqualLeadingCoefficients,
    ExactnessLost,
)

__all__ = [
    "SectorMap",
    "ShrunkSector",
    "NormalizedPair",
    "delta",
    "sector_map",
    "shrunk_sector",
    "normalize_leading",
    "growth_radius",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SectorMap:
    """Boundary angles ``theta[0] < ... < theta[2k-1]`` in ``[0, 2pi)``.

    ``sign[j]`` is the sign of the indicator on ``(theta[j], theta[j+1])``,
    with ``theta[2k] = theta[0] + 2pi``.
    """

    k: int
    theta: tuple[float, ...]
    sign: tuple[int, ...]

    def bounds(self, j: int) -> tuple[float, float]:
        lo = self.theta[j]
        hi = self.theta[j + 1] if j + 1 < len(self.theta) else self.theta[0] + TWO_PI
        return lo, hi

    def center(self, j: int) -> float:
        lo, hi = self.bounds(j)
        return 0.5 * (lo + hi)

    def growth_sectors(self) -> list[int]:
        return [j for j, s in enumerate(self.sign) if s > 0]

    def decay_sectors(self) -> list[int]:
        return [j for j, s in enumerate(self.sign) if s < 0]

    def sector_of(self, angle: float) -> int:
        """Index of the (open or boundary-including) sector containing ``angle``."""
        a = angle % TWO_PI
        for j in range(2 * self.k):
            lo, hi = self.bounds(j)
            if lo <= a < hi or lo <= a + TWO_PI < hi:
                return j
        return 2 * self.k - 1


@dataclass(frozen=True)
class ShrunkSector:
    theta_lo: float
    theta_hi: float
    epsilon: float

    def __post_init__(self):
        if self.theta_hi <= self.theta_lo:
            raise ValueError("shrunk sector has nonpositive width")

    @property
    def center(self) -> float:
        return 0.5 * (self.theta_lo + self.theta_hi)

    def rays(self, count: int = 3) -> list[float]:
        if count == 1:
            return [self.center]
        step = (self.theta_hi - self.theta_lo) / (count - 1)
        return [self.theta_lo + i * step for i in range(count)]


def _leading(p: Poly) -> tuple[int, complex]:
    p = as_poly(p)
    if p.degree < 1:
        raise ConstantPolynomial(f"{p} is constant")
    return p.degree, complex(p.lead())


def delta(p: Poly, theta: float) -> float:
    k, lead = _leading(p)
    return lead.real * math.cos(k * theta) - lead.imag * math.sin(k * theta)


def sector_map(p: Poly) -> SectorMap:
    """Closed-form zeros of the indicator and the sign on each sector."""
    k, lead = _leading(p)
    phi = math.atan2(lead.imag, lead.real)
    # delta = |lead| cos(k t + phi) vanishes where k t + phi = pi/2 mod pi
    base = (math.pi / 2 - phi) % math.pi
    theta1 = base / k
    thetas = tuple(theta1 + j * math.pi / k for j in range(2 * k))
    signs = []
    for j in range(2 * k):
        mid = thetas[j] + math.pi / (2 * k)
        signs.append(1 if delta(p, mid) > 0 else -1)
    return SectorMap(k, thetas, tuple(signs))


def shrunk_sector(smap: SectorMap, j: int, epsilon: float) -> ShrunkSector:
    lo, hi = smap.bounds(j)
    return ShrunkSector(lo + epsilon, hi - epsilon, epsilon)


@dataclass(frozen=True)
class NormalizedPair:
    p1: object
    p2: object
    alpha: GaussianRational
    exact: bool
    swapped: bool
    scale: object  # s with s**k == original leading coefficient of p1


def normalize_leading(p1: Poly, p2: Poly) -> NormalizedPair:
    """Rescale ``z -> z/s`` with ``s**k`` the leading coefficient of ``p1``.

    The inputs are swapped first when needed so that the returned ratio of
    leading coefficients satisfies ``|alpha| <= 1``.  When ``s`` is not a
    Gaussian rational the transformed pair is returned as complex
    coefficient lists, ``exact`` is false and :class:`ExactnessLost` is
    warned.
    """
    p1, p2 = as_poly(p1), as_poly(p2)
    if p1.degree != p2.degree:
        raise DegreeMismatch(f"degrees {p1.degree} and {p2.degree} differ")
    k = p1.degree
    if k < 1:
        raise ConstantPolynomial("both polynomials must be nonconstant")
    if p1.lead() == p2.lead():
        raise EqualLeadingCoefficients(f"both leading coefficients equal {p1.lead()}")
    swapped = p2.lead().norm() > p1.lead().norm()
    if swapped:
        p1, p2 = p2, p1
    alpha = p2.lead() / p1.lead()
    roots = [r for r in scalar_nth_roots(p1.lead(), k)]
    if roots:
        inv = roots[0].inverse()
        return NormalizedPair(p1.scale_arg(inv), p2.scale_arg(inv), alpha, True, swapped, roots[0])
    warnings.warn(f"{k}-th root of {p1.lead()} is not a Gaussian rational", ExactnessLost, stacklevel=2)
    s = complex(p1.lead()) ** (1.0 / k)
    f1 = [complex(c) / s**j for j, c in enumerate(p1.coeffs)]
    f2 = [complex(c) / s**j for j, c in enumerate(p2.coeffs)]
    return NormalizedPair(f1, f2, alpha, False, swapped, s)


def growth_radius(p: Poly, theta: float, epsilon: float = 0.1, r_cap: float = 1e4):
    """Smallest doubling radius ``r0`` past which ``Re p >= (1-eps) delta r^k``.

    Returns ``None`` when the indicator is not positive on the ray or the
    bound is not reached before ``r_cap``.  Beyond ``r0`` the bound is
    checked on a geometric grid up to ``r_cap``.
    """
    k, _ = _leading(p)
    d = delta(p, theta)
    if d <= 0:
        return None
    coeffs = p.complex_coeffs()
    u = complex(math.cos(theta), math.sin(theta))

    def ok(r: float) -> bool:
        z = r * u
        val = 0j
        for c in reversed(coeffs):
            val = val * z + c
        return val.real >= (1 - epsilon) * d * r**k

    r = 1.0
    while r <= r_cap:
        if ok(r):
            probe = r
            good = True
            while probe <= r_cap:
                if not ok(probe):
                    good = False
                    break
                probe *= 1.5
            if good:
                return r
        r *= 2.0
    return None
