"""Exact particular solutions of constant-coefficient linear ODEs.

The right-hand sides are finite sums c * x^p * e^(ax) * {1, sin bx,
cos bx}.  Differentiation acts on a finite basis of such functions as a
square rational matrix; solving phi(D) y = f reduces to one exact
linear solve per mode, by inverse or Moore-Penrose pseudoinverse.
"""

from .errors import (
    CoordinateError,
    MatDiffOpError,
    NonPolynomialError,
    ParseError,
    SingularMatrixError,
    UnsolvableError,
    VerificationError,
    ZeroOperatorError,
)
from .exactnum import GaussianRational, RatPoly, Rational
from .forcing import (
    ForcingFunction,
    ForcingTerm,
    Mode,
    TrigKind,
    evaluate_numeric,
    format_forcing,
    parse_forcing,
    parse_operator,
)
from .solver import (
    Method,
    Solution,
    integrate,
    maclaurin_coefficients,
    particular_solution,
    solve_poly_maclaurin,
    verify_particular,
)

__all__ = [
    "CoordinateError",
    "ForcingFunction",
    "ForcingTerm",
    "GaussianRational",
    "MatDiffOpError",
    "Method",
    "Mode",
    "NonPolynomialError",
    "ParseError",
    "RatPoly",
    "Rational",
    "SingularMatrixError",
    "Solution",
    "TrigKind",
    "UnsolvableError",
    "VerificationError",
    "ZeroOperatorError",
    "evaluate_numeric",
    "format_forcing",
    "integrate",
    "maclaurin_coefficients",
    "parse_forcing",
    "parse_operator",
    "particular_solution",
    "solve_poly_maclaurin",
    "verify_particular",
]

__version__ = "0.1.0"
