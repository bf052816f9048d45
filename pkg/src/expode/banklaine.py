"""Solutions ``g = kappa e^h`` of ``g'' + A g = 0`` with ``A = -(b1 e^{p1} + b2 e^{p2} + b3)``.

For ``g = kappa e^h`` one has ``g''/g = h'' + h'^2 + 2(kappa'/kappa)h' + kappa''/kappa``,
so every check here clears ``kappa^2`` and compares exponential polynomials
with polynomial coefficients.

Two families are built:

* ``p2 = p1/2``: ``h' = g1 e^{p1/2} + g`` with ``g1^2 = b1``; ``b2`` and
  ``b3`` are derived from ``(kappa, g)``.
* ``p1 = z``, ``p2 = 3z/4``: ``h' = -4c^2 e^{z/2} + c e^{z/4} - 1/8``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GaussianRational, Poly, RatFunc, Z, as_gq, as_poly, as_ratfunc, poly_gcd, poly_nth_root
from .errors import InvalidProblem, KappaNotSquarefree, NonPolynomialRelation, NotAPower, ZeroParameter
from .expoly import ExpPoly, ExpTerm, as_exppoly

__all__ = [
    "HalfCaseWitness",
    "ThreeQuarterWitness",
    "AnsatzResult",
    "construct_half",
    "random_half_case",
    "three_quarter_family",
    "printed_three_quarter_A",
    "verify_banklaine",
    "banklaine_residual",
    "ansatz_feasible",
]


@dataclass(frozen=True)
class HalfCaseWitness:
    p1: Poly
    kappa: Poly
    gamma1: Poly
    gamma: Poly
    b1: Poly
    b2: Poly
    b3: Poly
    hprime: ExpPoly
    A: ExpPoly

    @property
    def p2(self) -> Poly:
        return self.p1 * Fraction(1, 2)


@dataclass(frozen=True)
class ThreeQuarterWitness:
    c: GaussianRational
    hprime: ExpPoly
    A: ExpPoly
    printed_A: ExpPoly
    matches_printed: bool
    exponents: tuple

    def coefficient(self, exponent) -> RatFunc:
        return self.A.coeff(as_poly(exponent))


def _exact_div(num: Poly, den: Poly, what: str) -> Poly:
    q, r = divmod(num, den)
    if not r.is_zero():
        raise NonPolynomialRelation(f"{what} = ({num})/({den}) is not a polynomial")
    return q


def _check_squarefree(kappa: Poly) -> None:
    if kappa.is_zero():
        raise KappaNotSquarefree("kappa must be nonzero")
    if kappa.degree >= 1 and poly_gcd(kappa, kappa.derivative()).degree > 0:
        raise KappaNotSquarefree(f"{kappa} has a repeated root")


def construct_half(p1, kappa, gamma, b1) -> HalfCaseWitness:
    """Derive ``b2`` and ``b3`` from ``(p1, kappa, gamma, b1)`` and build the witness.

    ``b2 kappa = 2 g1 g kappa + g1' kappa + g1 p1' kappa/2 + 2 kappa' g1`` and
    ``b3 kappa = g^2 kappa + g' kappa + 2 g kappa' + kappa''``.
    """
    p1, kappa, gamma, b1 = (as_poly(x) for x in (p1, kappa, gamma, b1))
    if p1.degree < 1 or p1.constant_term():
        raise InvalidProblem("p1 must be nonconstant with p1(0) = 0")
    _check_squarefree(kappa)
    g1 = poly_nth_root(b1, 2)
    if g1.is_zero():
        raise InvalidProblem("b1 must be nonzero")
    dk, ddk = kappa.derivative(), kappa.derivative().derivative()
    dp1 = p1.derivative()
    b2 = _exact_div(
        g1 * gamma * kappa * 2 + g1.derivative() * kappa + g1 * dp1 * kappa * Fraction(1, 2) + dk * g1 * 2,
        kappa, "b2")
    b3 = _exact_div(gamma * gamma * kappa + gamma.derivative() * kappa + gamma * dk * 2 + ddk, kappa, "b3")
    if b2.is_zero():
        raise InvalidProblem("derived b2 vanishes; the e^{p1/2} term is absent")
    half = p1 * Fraction(1, 2)
    hprime = ExpPoly([ExpTerm(as_ratfunc(g1), half), ExpTerm(as_ratfunc(gamma), Poly())])
    A = -ExpPoly([ExpTerm(as_ratfunc(b1), p1), ExpTerm(as_ratfunc(b2), half), ExpTerm(as_ratfunc(b3), Poly())])
    return HalfCaseWitness(p1, kappa, g1, gamma, b1, b2, b3, hprime, A)


def _lagrange(points: list, values: list) -> Poly:
    total = Poly()
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = Poly([1])
        for j, xj in enumerate(points):
            if j != i:
                basis = basis * (Z - xj) * (as_gq(xi) - xj).inverse()
        total = total + basis * yi
    return total


def _random_poly(rng: random.Random, degree: int, lo: int = -3, hi: int = 3, zero_const: bool = False) -> Poly:
    cs = [Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(degree + 1)]
    if cs[-1] == 0:
        cs[-1] = Fraction(1)
    if zero_const:
        cs[0] = Fraction(0)
    return Poly(cs)


def random_half_case(rng: random.Random, max_degree: int = 2) -> HalfCaseWitness:
    """Random admissible input: ``kappa | g1`` and ``2 g kappa' + kappa'' = 0`` at the roots of kappa."""
    k = rng.randint(1, max_degree)
    p1 = _random_poly(rng, k, zero_const=True)
    roots = rng.sample(range(-4, 5), rng.randint(0, 2))
    kappa = Poly([1])
    for a in roots:
        kappa = kappa * (Z - a)
    g1 = kappa * _random_poly(rng, rng.randint(0, 1))
    dk, ddk = kappa.derivative(), kappa.derivative().derivative()
    base = _lagrange(roots, [-(ddk(a) / (dk(a) * 2)) for a in roots]) if roots else Poly()
    gamma = base + kappa * _random_poly(rng, rng.randint(0, 1))
    try:
        return construct_half(p1, kappa, gamma, g1 * g1)
    except InvalidProblem:
        return random_half_case(rng, max_degree)


def printed_three_quarter_A(c) -> ExpPoly:
    """The alternative reading ``-(16c^2 e^z - 8c^3 e^{3z/4} + 1/64)``."""
    c = as_gq(c)
    return -ExpPoly([ExpTerm(as_ratfunc(c * c * 16), Z), ExpTerm(as_ratfunc(-(c**3) * 8), Z * Fraction(3, 4)),
                     ExpTerm(as_ratfunc(Fraction(1, 64)), Poly())])


def three_quarter_family(c) -> ThreeQuarterWitness:
    c = as_gq(c)
    if not c:
        raise ZeroParameter("c must be nonzero")
    hprime = ExpPoly([
        ExpTerm(as_ratfunc(-(c * c) * 4), Z * Fraction(1, 2)),
        ExpTerm(as_ratfunc(c), Z * Fraction(1, 4)),
        ExpTerm(as_ratfunc(Fraction(-1, 8)), Poly()),
    ])
    A = -(hprime.derivative() + hprime * hprime)
    exps = tuple(A.exponents())
    want = {Z, Z * Fraction(3, 4), Poly()}
    if set(exps) != want:
        raise AssertionError(f"unexpected exponent set {exps}")
    if not verify_banklaine(A, hprime):
        raise AssertionError("three-quarter residual does not vanish")
    printed = printed_three_quarter_A(c)
    return ThreeQuarterWitness(c, hprime, A, printed, A == printed, exps)


def banklaine_residual(A, hprime, kappa=1) -> ExpPoly:
    """``kappa^2 h'^2 + kappa^2 h'' + 2 kappa kappa' h' + kappa kappa'' + kappa^2 A``."""
    A, hprime, kappa = as_exppoly(A), as_exppoly(hprime), as_poly(kappa)
    dk = kappa.derivative()
    k2 = kappa * kappa
    return (hprime * hprime + hprime.derivative() + A) * k2 + hprime * (kappa * dk * 2) + kappa * dk.derivative()


def verify_banklaine(A, hprime, kappa=1) -> bool:
    return banklaine_residual(A, hprime, kappa).is_zero()


@dataclass(frozen=True)
class AnsatzResult:
    feasible: bool
    reason: str
    hprime: ExpPoly | None = None
    residual: ExpPoly | None = None


def ansatz_feasible(p1, p2, b1, b2, b3, degree_bound: int | None = None) -> AnsatzResult:
    """Try ``h' = g1 e^{p1/2} + g2 e^{p2 - p1/2} + g`` with ``kappa = 1``.

    ``g1`` is fixed by the ``e^{p1}`` row, ``g2`` by the ``e^{p2}`` row and
    ``g`` by the ``e^{p1/2}`` row; all three rows are linear once ``g1`` is
    known, so a failed exact division or a nonzero remaining residual proves
    that no polynomial ``(g1, g2, g)`` of this shape exists.  Both signs of
    ``g1`` are tried.
    """
    p1, p2, b1, b2, b3 = (as_poly(x) for x in (p1, p2, b1, b2, b3))
    if degree_bound is None:
        degree_bound = 2 * max(x.degree for x in (p1, p2, b1, b2, b3))
    half = p1 * Fraction(1, 2)
    rhs = ExpPoly([ExpTerm(as_ratfunc(b1), p1), ExpTerm(as_ratfunc(b2), p2), ExpTerm(as_ratfunc(b3), Poly())])
    try:
        root = poly_nth_root(b1, 2)
    except NotAPower:
        return AnsatzResult(False, "b1 is not a square")
    reasons = []
    for g1 in (root, -root):
        if p2 == half:
            g2 = Poly()
        else:
            g2, r = divmod(b2, g1 * 2)
            if not r.is_zero():
                reasons.append("e^{p2} row has no polynomial solution")
                continue
        mid = p2 - half
        trial = ExpPoly([ExpTerm(as_ratfunc(g1), half), ExpTerm(as_ratfunc(g2), mid)])
        R = (trial.derivative() + trial * trial - rhs).coeff(half)
        g, r = divmod(-R.num, (g1 * 2) * R.den) if not R.is_zero() else (Poly(), Poly())
        if not r.is_zero() or not R.is_zero() and not R.den.is_constant():
            reasons.append("e^{p1/2} row has no polynomial solution")
            continue
        if max(g.degree, g2.degree) > degree_bound:
            reasons.append("solution exceeds the degree bound")
            continue
        hprime = trial + ExpPoly.term(g)
        residual = hprime.derivative() + hprime * hprime - rhs
        if residual.is_zero():
            return AnsatzResult(True, "all rows satisfied", hprime, residual)
        reasons.append(f"nonzero residual {residual}")
    return AnsatzResult(False, "; ".join(reasons))
