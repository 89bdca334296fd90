"""Exception types shared across the package.

The CLI maps these onto exit codes: parse errors are user input
problems, solve errors are well-formed problems the solver rejects,
verification errors indicate an internal bug.
"""


class MatDiffOpError(Exception):
    """Base class for all package errors."""


class ParseError(MatDiffOpError):
    """Raised for malformed input text.  Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroOperatorError(MatDiffOpError):
    """The zero operator annihilates nothing and cannot be solved against."""


class NonPolynomialError(MatDiffOpError):
    """Raised when the Maclaurin method is asked for a non-polynomial rhs."""


class CoordinateError(MatDiffOpError):
    """A function does not lie in the span of the given basis."""


class SingularMatrixError(MatDiffOpError):
    """Matrix inversion was attempted on a singular matrix."""


class UnsolvableError(MatDiffOpError):
    """The linear system has no solution (pseudoinverse check failed)."""


class VerificationError(MatDiffOpError):
    """Substituting the solution back did not reproduce the right-hand side."""
