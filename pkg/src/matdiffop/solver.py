"""Particular solutions of phi(D) y = f by exact matrix methods.

The right-hand side is split into modes (shared exponential and
trigonometric part).  For each mode the solver builds the finite basis
the solution must live in, turns phi(D) into a square rational matrix
on that basis, and solves the coordinate system exactly: by inverse
when the mode is non-resonant, by Moore-Penrose pseudoinverse when the
mode's root cancels the operator.

Three methods are offered.  MATRIX_MULTIPLICITY reads the basis size
off the root multiplicity of the characteristic polynomial.
MATRIX_ADAPTIVE starts with no extra powers and escalates until the
system becomes solvable; it must land on the very same basis and
vector.  MACLAURIN handles polynomial right-hand sides through the
power series of 1/phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (
    NonPolynomialError,
    UnsolvableError,
    VerificationError,
    ZeroOperatorError,
)
from .exactnum import GaussianRational, RatPoly, root_multiplicity
from .forcing import (
    ForcingFunction,
    Mode,
    TrigKind,
    add,
    canonicalize,
    differentiate,
    format_forcing,
    is_polynomial,
    scale,
    split_modes,
)
from .linalg import RatMatrix, Vector, solve_detailed
from .opspace import (
    Basis,
    MatrixOperator,
    build_basis,
    build_matrix_operator,
    coordinates,
    from_coordinates,
    operator_polynomial,
)


class Method(Enum):
    MATRIX_MULTIPLICITY = "matrix"
    MATRIX_ADAPTIVE = "adaptive"
    MACLAURIN = "maclaurin"


@dataclass(frozen=True)
class ModeWork:
    """Matrix trace of one mode solve, kept for display."""

    mode: Mode
    multiplicity: int
    basis: Basis
    derivative_matrix: RatMatrix
    operator_matrix: RatMatrix
    path: str
    resolvent: RatMatrix
    rhs: Vector
    coordinates: Vector


@dataclass(frozen=True)
class Solution:
    """A verified particular solution.

    per_mode pairs each mode's basis with the coordinate vector of the
    solution part living in it.  residual is phi(D) applied to the
    expression minus the right-hand side and is the zero function on
    every successful solve.  work_log carries the matrix traces for the
    matrix methods and is None for the Maclaurin method.
    """

    expression: ForcingFunction
    per_mode: Tuple[Tuple[Basis, Vector], ...]
    residual: ForcingFunction
    work_log: Optional[Tuple[ModeWork, ...]]
    method: Method


def _solve_mode(operator: RatPoly, mode: Mode, multiplicity: int) -> ModeWork:
    basis = build_basis(mode.alpha, mode.beta, mode.degree, multiplicity)
    derivative = build_matrix_operator(basis)
    matrix = operator_polynomial(operator, derivative)
    rhs = coordinates(mode.as_function(), basis)
    x, path, resolvent = solve_detailed(matrix.matrix, rhs)
    return ModeWork(
        mode=mode,
        multiplicity=multiplicity,
        basis=basis,
        derivative_matrix=derivative.matrix,
        operator_matrix=matrix.matrix,
        path=path,
        resolvent=resolvent,
        rhs=rhs,
        coordinates=x,
    )


def _mode_root(mode: Mode) -> GaussianRational:
    return GaussianRational(mode.alpha, mode.beta)


def _solve_mode_multiplicity(operator: RatPoly, mode: Mode) -> ModeWork:
    k = root_multiplicity(operator, _mode_root(mode))
    try:
        work = _solve_mode(operator, mode, k)
    except UnsolvableError as exc:
        raise AssertionError(
            "solve at the exact root multiplicity cannot fail"
        ) from exc
    if k > 0:
        _assert_shell_bands(work, k)
    return work


def _assert_shell_bands(work: ModeWork, multiplicity: int):
    # With a k-fold root, the operator matrix must lose its first d*k
    # rows and last d*k columns (d = block size of the mode).
    d = 1 if work.mode.beta == 0 else 2
    band = d * multiplicity
    m = work.operator_matrix
    assert all(
        x == 0 for row in m.rows[:band] for x in row
    ), "expected leading zero rows in resonant operator matrix"
    assert all(
        x == 0 for row in m.rows for x in row[m.ncols - band:]
    ), "expected trailing zero columns in resonant operator matrix"


def _solve_mode_adaptive(
    operator: RatPoly, mode: Mode, max_escalations: Optional[int] = None
) -> ModeWork:
    limit = operator.degree if max_escalations is None else max_escalations
    k = 0
    while True:
        try:
            return _solve_mode(operator, mode, k)
        except UnsolvableError:
            if k >= limit:
                raise AssertionError(
                    "escalation limit exceeded; multiplicity is bounded by "
                    "the operator degree"
                ) from None
            k += 1


def solve_mode_multiplicity(operator: RatPoly, mode: Mode) -> Tuple[Basis, Vector]:
    """Solve one mode using the root multiplicity of the operator."""
    work = _solve_mode_multiplicity(operator, mode)
    return work.basis, work.coordinates


def solve_mode_adaptive(
    operator: RatPoly, mode: Mode, max_escalations: Optional[int] = None
) -> Tuple[Basis, Vector]:
    """Solve one mode by escalating the basis until the system is solvable."""
    work = _solve_mode_adaptive(operator, mode, max_escalations)
    return work.basis, work.coordinates


def particular_solution(
    operator: RatPoly,
    rhs: ForcingFunction,
    method: Method = Method.MATRIX_MULTIPLICITY,
    *,
    verify: bool = True,
) -> Solution:
    """Particular solution of phi(D) y = rhs.

    With verify=True (the default) the result is substituted back into
    the equation symbolically; a nonzero residual is an internal error,
    never a warning.  verify=False skips only that substitute-back pass;
    the exact matrix-level check (the solved coordinates reproduce the
    right-hand side coordinates) always runs.
    """
    if operator.is_zero:
        raise ZeroOperatorError("zero operator")
    if method is Method.MACLAURIN:
        expression = solve_poly_maclaurin(operator, rhs)
        per_mode: Tuple[Tuple[Basis, Vector], ...] = ()
        work_log = None
    else:
        works: List[ModeWork] = []
        for mode in split_modes(rhs):
            if method is Method.MATRIX_MULTIPLICITY:
                works.append(_solve_mode_multiplicity(operator, mode))
            else:
                works.append(_solve_mode_adaptive(operator, mode))
        expression = ForcingFunction.zero()
        for work in works:
            expression = add(
                expression, from_coordinates(work.coordinates, work.basis)
            )
        per_mode = tuple((w.basis, w.coordinates) for w in works)
        work_log = tuple(works)
    if verify:
        residual = verify_particular(operator, expression, rhs)
        if not residual.is_zero:
            raise VerificationError(
                f"substitute-back left a nonzero residual: {format_forcing(residual)}"
            )
    else:
        residual = ForcingFunction.zero()
    return Solution(
        expression=expression,
        per_mode=per_mode,
        residual=residual,
        work_log=work_log,
        method=method,
    )


def maclaurin_coefficients(operator: RatPoly, count: int) -> Tuple[Fraction, ...]:
    """First `count` Maclaurin coefficients of 1/operator.

    The reciprocal power series exists iff the constant term is nonzero;
    its coefficients satisfy the convolution recurrence
    c_k = -(a_1 c_{k-1} + ... + a_n c_{k-n}) / a_0 with c_0 = 1/a_0.
    """
    if operator.is_zero:
        raise ZeroOperatorError("zero operator")
    a = operator.coeffs
    if a[0] == 0:
        raise ValueError(
            "operator has no reciprocal series: constant term is zero"
        )
    c: List[Fraction] = []
    for k in range(count):
        s = Fraction(1) if k == 0 else Fraction(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s -= a[j] * c[k - j]
        c.append(s / a[0])
    return tuple(c)


def solve_poly_maclaurin(operator: RatPoly, rhs: ForcingFunction) -> ForcingFunction:
    """Particular solution for a polynomial rhs via the series of 1/phi.

    Since D is nilpotent on polynomials, the series acts as the finite
    sum y = sum_j c_j P^(j).  A zero constant term is handled by
    factoring out D^t and antidifferentiating the reduced solution t
    times with zero integration constants.
    """
    if operator.is_zero:
        raise ZeroOperatorError("zero operator")
    if not is_polynomial(rhs):
        raise NonPolynomialError(
            "the Maclaurin method needs a polynomial right-hand side"
        )
    if rhs.is_zero:
        return ForcingFunction.zero()
    shift = next(i for i, c in enumerate(operator.coeffs) if c != 0)
    reduced = RatPoly(operator.coeffs[shift:])
    degree = max(t.power for t in rhs.terms)
    series = maclaurin_coefficients(reduced, degree + 1)
    result = ForcingFunction.zero()
    derivative = rhs
    for c in series:
        result = add(result, scale(derivative, c))
        derivative = differentiate(derivative)
    for _ in range(shift):
        result = _antidifferentiate_poly(result)
    return result


def _antidifferentiate_poly(f: ForcingFunction) -> ForcingFunction:
    return canonicalize(
        [
            (t.coef / (t.power + 1), t.power + 1, 0, 0, TrigKind.ONE)
            for t in f.terms
        ]
    )


def verify_particular(
    operator: RatPoly, candidate: ForcingFunction, rhs: ForcingFunction
) -> ForcingFunction:
    """Residual phi(D) candidate - rhs, canonicalized (zero iff solved)."""
    acc = ForcingFunction.zero()
    derivative = candidate
    for coefficient in operator.coeffs:
        if coefficient != 0:
            acc = add(acc, scale(derivative, coefficient))
        derivative = differentiate(derivative)
    return add(acc, scale(rhs, -1))


def integrate(f: ForcingFunction) -> ForcingFunction:
    """An antiderivative of f, as the particular solution of D y = f.

    The integration constant is omitted; display layers append "+ C".
    """
    return particular_solution(
        RatPoly.monomial(1), f, Method.MATRIX_MULTIPLICITY
    ).expression
