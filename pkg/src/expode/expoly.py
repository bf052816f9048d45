"""Exponential polynomials ``sum_j a_j(z) * exp(q_j(z))``.

Coefficients are :class:`~expode.algebra.RatFunc` values and exponents are
:class:`~expode.algebra.Poly` values with zero constant term, so that two
summands can be merged exactly whenever their exponents agree.  Terms with
pairwise distinct exponents are linearly independent, which turns the zero
test into a structural check on the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .algebra import (
    GaussianRational,
    Poly,
    RatFunc,
    ZERO_POLY,
    as_ratfunc,
    eval_complex,
)
from .errors import NonzeroConstantExponent, Overflow

__all__ = [
    "ExpTerm",
    "ExpPoly",
    "ep_normalize",
    "ep_arith",
    "ep_pow",
    "ep_derivative",
    "ep_is_zero",
    "ep_eval",
    "as_exppoly",
    "EXP_BUDGET",
]

# largest x with exp(x) finite in IEEE double
EXP_BUDGET = 709.0


@dataclass(frozen=True)
class ExpTerm:
    coeff: RatFunc
    exponent: Poly

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_ratfunc(self.coeff))
        if not isinstance(self.exponent, Poly):
            object.__setattr__(self, "exponent", Poly([self.exponent]))
        if self.exponent.constant_term():
            raise NonzeroConstantExponent(f"exponent {self.exponent} has a nonzero constant term")


class ExpPoly:
    """Canonical exponential polynomial.

    Terms are kept sorted by exponent (degree first, then coefficients from
    the leading one down); the empty sum is the zero function.
    """

    __slots__ = ("_terms", "_index")

    def __init__(self, terms: Iterable = ()):
        merged: dict[Poly, RatFunc] = {}
        for t in terms:
            if not isinstance(t, ExpTerm):
                coeff, exponent = t
                t = ExpTerm(as_ratfunc(coeff), exponent if isinstance(exponent, Poly) else Poly([exponent]))
            if t.exponent in merged:
                merged[t.exponent] = merged[t.exponent] + t.coeff
            else:
                merged[t.exponent] = t.coeff
        self._set(merged)

    def _set(self, merged: dict) -> None:
        keys = sorted((e for e, c in merged.items() if not c.is_zero()), key=Poly.sort_key)
        self._terms = tuple(ExpTerm(merged[e], e) for e in keys)
        self._index = {t.exponent: t.coeff for t in self._terms}

    @classmethod
    def _from_dict(cls, merged: dict) -> "ExpPoly":
        obj = object.__new__(cls)
        obj._set(merged)
        return obj

    @classmethod
    def term(cls, coeff, exponent: Poly = ZERO_POLY) -> "ExpPoly":
        return cls([ExpTerm(as_ratfunc(coeff), exponent)])

    @classmethod
    def exp(cls, exponent: Poly) -> "ExpPoly":
        return cls.term(1, exponent)

    # -- structure ------------------------------------------------------------
    @property
    def terms(self) -> tuple[ExpTerm, ...]:
        return self._terms

    def __iter__(self) -> Iterator[ExpTerm]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def exponents(self) -> list[Poly]:
        return [t.exponent for t in self._terms]

    def coeff(self, exponent: Poly) -> RatFunc:
        """Coefficient multiplying ``exp(exponent)`` (zero when absent)."""
        if not isinstance(exponent, Poly):
            exponent = Poly([exponent])
        return self._index.get(exponent, RatFunc(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_ratfunc(self) -> bool:
        return all(t.exponent.is_zero() for t in self._terms)

    def as_ratfunc(self) -> RatFunc:
        if not self.is_ratfunc():
            raise TypeError("exponential polynomial has transcendental terms")
        return self.coeff(ZERO_POLY)

    def has_polynomial_coefficients(self) -> bool:
        return all(t.coeff.is_polynomial() for t in self._terms)

    # -- algebra --------------------------------------------------------------
    def __add__(self, other):
        o = _ep_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        merged = dict(self._index)
        for t in o._terms:
            merged[t.exponent] = merged[t.exponent] + t.coeff if t.exponent in merged else t.coeff
        return ExpPoly._from_dict(merged)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._from_dict({t.exponent: -t.coeff for t in self._terms})

    def __sub__(self, other):
        o = _ep_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _ep_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _ep_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        merged: dict[Poly, RatFunc] = {}
        for s in self._terms:
            for t in o._terms:
                e = s.exponent + t.exponent
                c = s.coeff * t.coeff
                merged[e] = merged[e] + c if e in merged else c
        return ExpPoly._from_dict(merged)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = ONE_EP, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "ExpPoly":
        """Termwise ``(a e^q)' = (a' + a q') e^q``."""
        merged = {}
        for t in self._terms:
            merged[t.exponent] = t.coeff.derivative() + t.coeff * as_ratfunc(t.exponent.derivative())
        return ExpPoly._from_dict(merged)

    def map_coeffs(self, fn) -> "ExpPoly":
        return ExpPoly([ExpTerm(fn(t.coeff), t.exponent) for t in self._terms])

    # -- evaluation -----------------------------------------------------------
    def __call__(self, z):
        return ep_eval(self, z)

    def log_terms(self, z):
        """Per-term ``(log|a_j(z)| + Re q_j(z), arg a_j(z) + Im q_j(z))`` arrays.

        Shapes are ``(len(self), *z.shape)``; a vanishing coefficient gives
        ``-inf`` magnitude.
        """
        z = np.asarray(z, dtype=complex)
        mags, phases = [], []
        with np.errstate(divide="ignore"):
            for t in self._terms:
                a = eval_complex(t.coeff, z)
                q = eval_complex(t.exponent, z) if not t.exponent.is_zero() else np.zeros_like(z)
                mags.append(np.log(np.abs(a)) + q.real)
                phases.append(np.angle(a) + q.imag)
        return np.array(mags), np.array(phases)

    def log_abs(self, z):
        """``log|f(z)|`` computed without forming any exponential that could overflow."""
        z = np.asarray(z, dtype=complex)
        if not self._terms:
            return np.full(z.shape, -np.inf)
        mags, phases = self.log_terms(z)
        top = np.max(mags, axis=0)
        safe_top = np.where(np.isfinite(top), top, 0.0)
        total = np.sum(np.exp(mags - safe_top) * np.exp(1j * phases), axis=0)
        with np.errstate(divide="ignore"):
            return np.where(np.isfinite(top), safe_top + np.log(np.abs(total)), -np.inf)

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = _ep_coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"ExpPoly({self})"

    def __str__(self):
        from .parser import format_exppoly

        return format_exppoly(self)


def _ep_coerce(x):
    if isinstance(x, ExpPoly):
        return x
    if isinstance(x, (RatFunc, Poly, GaussianRational, int, Fraction)):
        return as_exppoly(x)
    return NotImplemented


def as_exppoly(x) -> ExpPoly:
    if isinstance(x, ExpPoly):
        return x
    rf = as_ratfunc(x)
    if rf.is_zero():
        return ExpPoly()
    return ExpPoly._from_dict({ZERO_POLY: rf})


ONE_EP = ExpPoly._from_dict({ZERO_POLY: as_ratfunc(1)})


def ep_normalize(terms: Iterable) -> ExpPoly:
    """Merge like exponents, drop zero coefficients and sort canonically."""
    return ExpPoly(terms)


def ep_arith(a: ExpPoly, b: ExpPoly, op: str) -> ExpPoly:
    if op == "add":
        return as_exppoly(a) + as_exppoly(b)
    if op == "sub":
        return as_exppoly(a) - as_exppoly(b)
    if op == "mul":
        return as_exppoly(a) * as_exppoly(b)
    raise ValueError(f"unknown operation {op!r}")


def ep_pow(a: ExpPoly, n: int) -> ExpPoly:
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return as_exppoly(a) ** n


def ep_derivative(a: ExpPoly) -> ExpPoly:
    return as_exppoly(a).derivative()


def ep_is_zero(a: ExpPoly) -> bool:
    return as_exppoly(a).is_zero()


def ep_eval(a: ExpPoly, z):
    """Floating evaluation at a point (or numpy array of points).

    Raises :class:`Overflow` if some ``Re q_j(z)`` exceeds the double
    exponent budget; callers needing magnitudes there should use
    :meth:`ExpPoly.log_abs`.
    """
    a = as_exppoly(a)
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    total = np.zeros_like(zz)
    for t in a.terms:
        c = eval_complex(t.coeff, zz)
        if t.exponent.is_zero():
            total = total + c
            continue
        q = eval_complex(t.exponent, zz)
        if np.any(q.real > EXP_BUDGET):
            raise Overflow(f"Re({t.exponent}) exceeds {EXP_BUDGET} at the evaluation point")
        total = total + c * np.exp(q)
    return complex(total) if scalar else total


def proportionality(q: Poly, p: Poly):
    """Return ``s`` with ``q == s*p`` exactly, or ``None``."""
    if p.is_zero():
        return None
    s = q.lead() / p.lead() if not q.is_zero() else GaussianRational(0)
    if q.is_zero():
        return s
    if q.degree != p.degree:
        return None
    return s if p * s == q else None
