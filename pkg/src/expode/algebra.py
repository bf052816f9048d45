"""Exact arithmetic over the Gaussian rationals Q(i).

Three value types live here: :class:`GaussianRational` scalars, dense
univariate :class:`Poly` objects and reduced :class:`RatFunc` quotients.
All of them are immutable and hashable.  Floats appear only at the
evaluation boundary (:func:`eval_complex`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import mpmath
import numpy as np

from .errors import DivisionByZero, NotAPower, PoleProximity

__all__ = [
    "GaussianRational",
    "GQ",
    "Poly",
    "RatFunc",
    "Z",
    "as_gq",
    "as_poly",
    "as_ratfunc",
    "poly_arith",
    "poly_derivative",
    "ratfunc_normalize",
    "poly_nth_root",
    "scalar_nth_roots",
    "eval_complex",
    "pole_tolerance",
]


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: "ScalarLike" = 0, im: "ScalarLike" = 0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational real part with an imaginary part")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"3/4"`` or a complex string such as ``"1/2+3/4i"``."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            im = body if body not in ("", "+", "-") else body + "1"
            return cls(0, Fraction(im))
        re_part, im_part = body[:cut], body[cut:]
        if im_part in ("+", "-"):
            im_part += "1"
        return cls(Fraction(re_part), Fraction(im_part))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        nrm = self.norm()
        if nrm == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational(self.re / nrm, -self.im / nrm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- predicates & conversion ----------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def arg(self) -> float:
        """Argument in ``[0, 2*pi)``."""
        a = math.atan2(float(self.im), float(self.re))
        return a + 2 * math.pi if a < 0 else a

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GQ({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GQ = GaussianRational
ScalarLike = Union[GaussianRational, int, Fraction, str]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact scalar expected, got {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


def as_gq(x) -> GaussianRational:
    """Coerce ints, Fractions, strings and exact complexes to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only integer-valued complex literals convert exactly")
        return GaussianRational(int(x.real), int(x.imag))
    return GaussianRational(x)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Gaussian integer n-th roots


def _gauss_int_roots(a: int, b: int, n: int) -> list[tuple[int, int]]:
    """All Gaussian integers ``y`` with ``y**n == a + b*i``."""
    if a == 0 and b == 0:
        return [(0, 0)]
    nrm = a * a + b * b
    r = _iroot(nrm, n)
    if r is None:
        return []
    bits = max(nrm.bit_length() // n, 1) + 64
    found = []
    with mpmath.workprec(bits):
        w = mpmath.mpc(a, b)
        for k in range(n):
            cand = mpmath.root(w, n, k)
            x, y = int(mpmath.nint(cand.real)), int(mpmath.nint(cand.imag))
            if _gauss_pow(x, y, n) == (a, b) and (x, y) not in found:
                found.append((x, y))
    return found


def _iroot(m: int, n: int):
    if m < 0:
        return None
    if m in (0, 1):
        return m
    lo, hi = 0, 1 << (m.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**n == m else None


def _gauss_pow(x: int, y: int, n: int) -> tuple[int, int]:
    rx, ry = 1, 0
    bx, by = x, y
    while n:
        if n & 1:
            rx, ry = rx * bx - ry * by, rx * by + ry * bx
        bx, by = bx * bx - by * by, 2 * bx * by
        n >>= 1
    return rx, ry


def scalar_nth_roots(c: GaussianRational, n: int) -> list[GaussianRational]:
    """Every exact n-th root of ``c`` in Q(i), sorted by argument in ``[0, 2pi)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = as_gq(c)
    if not c:
        return [ZERO]
    den = math.lcm(c.re.denominator, c.im.denominator)
    a = int(c.re * den) * den ** (n - 1)
    b = int(c.im * den) * den ** (n - 1)
    roots = [GaussianRational(Fraction(x, den), Fraction(y, den)) for x, y in _gauss_int_roots(a, b, n)]
    return sorted(roots, key=lambda g: g.arg())


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Dense polynomial in ``z``; ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_gq(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    # -- structure ------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports ``-1``."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def constant_term(self) -> GaussianRational:
        return self.coeff(0)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.lead().inverse()
        return Poly._raw([c * inv for c in self.coeffs])

    def scale_arg(self, s) -> "Poly":
        """Return ``z -> self(s*z)``."""
        s = as_gq(s)
        out, power = [], ONE
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return Poly._raw(out)

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = ONE_POLY, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        inv = o.lead().inverse()
        if len(rem) - 1 < db:
            return ZERO_POLY, self
        quot = [ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quot[k] = c
            if c:
                for j, bc in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * bc
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs) if k > 0])

    def antiderivative(self) -> "Poly":
        """Primitive with zero constant term."""
        return Poly._raw([ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __call__(self, x):
        """Exact Horner evaluation at a scalar (or composition with a Poly)."""
        if isinstance(x, Poly):
            result = ZERO_POLY
            for c in reversed(self.coeffs):
                result = result * x + c
            return result
        x = as_gq(x)
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def complex_coeffs(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = _poly_coerce(other)
        if o is NotImplemented:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(("Poly", self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in reversed(self.coeffs)))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)


ZERO_POLY = Poly()
ONE_POLY = Poly([1])
Z = Poly([0, 1])


def _poly_coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (GaussianRational, int, Fraction)):
        return Poly([x])
    return NotImplemented


def as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, RatFunc):
        if not x.is_polynomial():
            raise TypeError(f"{x} is not a polynomial")
        return x.num
    return Poly([as_gq(x)])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    # monic remainders keep the coefficient sizes in check
    if not b.is_zero():
        b = b.monic()
    while not b.is_zero():
        r = divmod(a, b)[1]
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = ONE_POLY, ZERO_POLY
    t0, t1 = ZERO_POLY, ONE_POLY
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lead().inverse()
    return r0 * inv, s0 * inv, t0 * inv


def poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch ``add``, ``sub``, ``mul`` or ``divmod`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_derivative(a: Poly) -> Poly:
    return a.derivative()


def poly_nth_root(b: Poly, n: int) -> Poly:
    """Exact polynomial ``g`` with ``g**n == b``.

    Among the admissible roots the one whose leading coefficient has the
    smallest argument in ``[0, 2pi)`` is returned; whenever the principal
    branch (argument in ``[0, 2pi/n)``) is exact this is that branch.

    Raises :class:`NotAPower` when no root with Gaussian-rational
    coefficients exists.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b = as_poly(b)
    if n == 1 or b.is_zero():
        return b
    d = b.degree
    if d % n:
        raise NotAPower(f"degree {d} is not divisible by {n}")
    e = d // n
    lead_roots = scalar_nth_roots(b.lead(), n)
    if not lead_roots:
        raise NotAPower(f"leading coefficient {b.lead()} has no exact {n}-th root")
    c = lead_roots[0]
    inv = b.lead().inverse()
    # reversed, normalized series g = 1 + g_1 x + ...; h = g**(1/n)
    g = [b.coeffs[d - j] * inv for j in range(e + 1)]
    a = Fraction(1, n)
    h = [ONE]
    for k in range(1, e + 1):
        acc = ZERO
        for j in range(1, k + 1):
            if g[j]:
                acc = acc + g[j] * h[k - j] * (a * j - (k - j))
        h.append(acc / k)
    root = Poly([c * h[e - i] for i in range(e + 1)])
    if root**n != b:
        raise NotAPower(f"{b} is not an exact {n}-th power")
    return root


# ---------------------------------------------------------------------------
# Rational functions


class RatFunc:
    """Reduced quotient ``num/den`` with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced: bool = False):
        num = _as_poly_or_ratfunc(num)
        den = _as_poly_or_ratfunc(den)
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            n = num if isinstance(num, RatFunc) else RatFunc(num)
            d = den if isinstance(den, RatFunc) else RatFunc(den)
            if d.num.is_zero():
                raise DivisionByZero("rational function with zero denominator")
            num, den = n.num * d.den, n.den * d.num
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = object.__new__(cls)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        num, den = _reduce(num, den)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def as_poly(self) -> Poly:
        return as_poly(self)

    # -- field operations -----------------------------------------------------
    def __add__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc._make(self.num + o.num, self.den)
        return RatFunc._make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(RatFunc)
        object.__setattr__(obj, "num", -self.num)
        object.__setattr__(obj, "den", self.den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __sub__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc._make(self.num * o.num, ONE_POLY)
        return RatFunc._make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunc._make(self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _reduced=True)

    def derivative(self) -> "RatFunc":
        if self.is_polynomial():
            return RatFunc._make(self.num.derivative() * self.den.lead().inverse(), ONE_POLY)
        return RatFunc._make(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def logarithmic_derivative(self) -> "RatFunc":
        return self.derivative() / self

    def __call__(self, x):
        x = as_gq(x)
        d = self.den(x)
        if not d:
            raise DivisionByZero(f"pole at {x}")
        return self.num(x) / d

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = _rf_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.num) if self.is_polynomial() else hash(("RatFunc", self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from .parser import format_ratfunc

        return format_ratfunc(self)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
    lc = den.lead()
    if lc != ONE:
        inv = lc.inverse()
        num = Poly._raw([c * inv for c in num.coeffs])
        den = Poly._raw([c * inv for c in den.coeffs])
    return num, den


def _as_poly_or_ratfunc(x):
    if isinstance(x, (Poly, RatFunc)):
        return x
    return Poly([as_gq(x)])


def _rf_coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, _reduced=True)
    if isinstance(x, (GaussianRational, int, Fraction)):
        return RatFunc(Poly([x]), _reduced=True)
    return NotImplemented


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, _reduced=True)
    return RatFunc(Poly([as_gq(x)]), _reduced=True)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """gcd-reduce ``num/den`` and make the denominator monic."""
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# Floating evaluation


def _horner(cs: Sequence[complex], z):
    result = np.zeros_like(z, dtype=complex) if isinstance(z, np.ndarray) else 0j
    for c in reversed(cs):
        result = result * z + c
    return result


def pole_tolerance(den: Poly, z) -> float:
    return 1e-12 * (1.0 + abs(z)) ** den.degree


def eval_complex(x, z, *, pole_tol: float | None = None):
    """Evaluate a Poly or RatFunc at a complex float (or numpy array).

    Rational functions raise :class:`PoleProximity` when the denominator is
    smaller than ``pole_tol`` (default ``1e-12*(1+|z|)**deg(den)``).
    """
    if isinstance(x, GaussianRational):
        return complex(x) + 0 * z
    if isinstance(x, Poly):
        return _horner(x.complex_coeffs(), z)
    if not isinstance(x, RatFunc):
        raise TypeError(f"cannot evaluate {type(x).__name__}")
    num = _horner(x.num.complex_coeffs(), z)
    if x.is_polynomial():
        return num
    den = _horner(x.den.complex_coeffs(), z)
    tol = pole_tol if pole_tol is not None else 1e-12 * (1.0 + np.abs(z)) ** x.den.degree
    if np.any(np.abs(den) < tol):
        raise PoleProximity(f"evaluation of {x} too close to a pole")
    return num / den


def complex_roots(p: Poly) -> list[complex]:
    """Floating roots of ``p`` (empty for constants)."""
    if p.degree < 1:
        return []
    return list(np.roots(list(reversed(p.complex_coeffs()))))
