"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the command line maps
these to exit status 1 and echoes the code in its JSON error payload.
"""

from __future__ import annotations


class ExpodeError(Exception):
    code = "expode_error"


class DivisionByZero(ExpodeError, ZeroDivisionError):
    code = "division_by_zero"


class NotAPower(ExpodeError):
    code = "not_a_power"


class PoleProximity(ExpodeError):
    code = "pole_proximity"


class NonzeroConstantExponent(ExpodeError):
    code = "nonzero_constant_exponent"


class NonPolynomialExponent(ExpodeError):
    code = "non_polynomial_exponent"


class NonPolynomialDenominator(ExpodeError):
    code = "non_polynomial_denominator"


class Overflow(ExpodeError, OverflowError):
    code = "overflow"


class ConstantPolynomial(ExpodeError):
    code = "constant_polynomial"


class DegreeMismatch(ExpodeError):
    code = "degree_mismatch"


class EqualLeadingCoefficients(ExpodeError):
    code = "equal_leading_coefficients"


class ToleranceNotMet(ExpodeError):
    code = "tolerance_not_met"


class InvalidProblem(ExpodeError):
    code = "invalid_problem"


class NonRealAlpha(InvalidProblem):
    code = "non_real_alpha"


class NoEntireSolution(ExpodeError):
    code = "no_entire_solution"


class P2NotProportional(ExpodeError):
    code = "p2_not_proportional"


class NonRationalExponent(ExpodeError):
    code = "non_rational_exponent"


class VerificationFailed(ExpodeError):
    code = "verification_failed"


class KappaNotSquarefree(ExpodeError):
    code = "kappa_not_squarefree"


class NonPolynomialRelation(ExpodeError):
    """A forward-constructed coefficient came out as a proper rational function."""

    code = "non_polynomial_relation"


class ZeroParameter(ExpodeError):
    code = "zero_parameter"


class InsufficientData(ExpodeError):
    code = "insufficient_data"


class PoleOnCircle(ExpodeError):
    code = "pole_on_circle"


class PoleOnRay(ExpodeError):
    code = "pole_on_ray"


class StepCollapse(ExpodeError):
    code = "step_collapse"


class ParseError(ExpodeError, SyntaxError):
    code = "syntax_error"

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.message = message
        self.line = line
        self.col = col


class ExactnessLost(UserWarning):
    """Issued when a transformation can only be carried out in floating point."""
