"""Exact exponential-polynomial algebra and growth checks for linear and nonlinear complex ODEs."""

from .algebra import GaussianRational, Poly, RatFunc, poly_nth_root
from .errors import ExpodeError
from .expoly import ExpPoly, ExpTerm, ep_is_zero
from .parser import parse, to_text

__all__ = [
    "GaussianRational",
    "Poly",
    "RatFunc",
    "ExpPoly",
    "ExpTerm",
    "ExpodeError",
    "ep_is_zero",
    "parse",
    "poly_nth_root",
    "to_text",
]

__version__ = "0.1.0"
