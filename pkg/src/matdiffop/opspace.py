"""Finite function bases and the matrix form of d/dx on them.

A basis collects the functions x^p e^(ax) {sin bx, cos bx} needed to
express a forcing mode and its particular solutions.  Because the span
is closed under differentiation, d/dx acts on coordinates as a square
rational matrix whose column j holds the coordinates of the derivative
of basis function j.  Operator polynomials then turn a characteristic
polynomial into a concrete matrix acting on coordinate vectors.

Basis order is power descending with sin before cos, e.g.
{x^2 e^(2x) sin 3x, x^2 e^(2x) cos 3x, ..., e^(2x) sin 3x, e^(2x) cos 3x}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from .errors import CoordinateError
from .exactnum import RatPoly, RationalLike, as_rational
from .forcing import (
    ForcingFunction,
    ForcingTerm,
    TrigKind,
    differentiate,
    canonicalize,
)
from .linalg import RatMatrix, Vector


@dataclass(frozen=True)
class BasisFunction:
    """A single basis element x^power e^(alpha x) {1, sin, cos}(beta x)."""

    power: int
    alpha: Fraction
    beta: Fraction
    trig: TrigKind

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.power < 0:
            raise ValueError("negative power in basis function")
        if self.trig is TrigKind.ONE:
            if self.beta != 0:
                raise ValueError("trig-free basis function must have beta = 0")
        elif self.beta <= 0:
            raise ValueError("sin/cos basis function must have beta > 0")

    @property
    def key(self) -> Tuple[Fraction, Fraction, int, TrigKind]:
        return (self.alpha, self.beta, self.power, self.trig)

    def as_term(self, coef: RationalLike = 1) -> ForcingTerm:
        return ForcingTerm(
            coef=as_rational(coef),
            power=self.power,
            alpha=self.alpha,
            beta=self.beta,
            trig=self.trig,
        )

    def __str__(self) -> str:
        return str(ForcingFunction((self.as_term(),)))


def _basis_order(bf: BasisFunction):
    return (-bf.power, 1 if bf.trig is TrigKind.COS else 0)


@dataclass(frozen=True)
class Basis:
    """Ordered family of basis functions sharing one (alpha, beta)."""

    functions: Tuple[BasisFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise ValueError("empty basis")
        first = self.functions[0]
        if any((bf.alpha, bf.beta) != (first.alpha, first.beta) for bf in self.functions):
            raise ValueError("basis functions must share alpha and beta")
        keys = [_basis_order(bf) for bf in self.functions]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("basis functions out of order or duplicated")

    @property
    def alpha(self) -> Fraction:
        return self.functions[0].alpha

    @property
    def beta(self) -> Fraction:
        return self.functions[0].beta

    @property
    def size(self) -> int:
        return len(self.functions)

    @cached_property
    def _index(self) -> Dict[tuple, int]:
        return {bf.key: i for i, bf in enumerate(self.functions)}

    def position(self, key: tuple) -> int | None:
        return self._index.get(key)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self) -> int:
        return len(self.functions)

    def __str__(self) -> str:
        return "{" + ", ".join(str(bf) for bf in self.functions) + "}"


@dataclass(frozen=True)
class MatrixOperator:
    """A linear operator on the span of a basis, in matrix form."""

    basis: Basis
    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.nrows != self.matrix.ncols or self.matrix.nrows != len(self.basis):
            raise ValueError("operator matrix must be square of the basis size")


def build_basis(
    alpha: RationalLike,
    beta: RationalLike,
    degree: int,
    multiplicity: int,
) -> Basis:
    """Solution basis for a mode of the given degree and root multiplicity.

    Powers run from degree + multiplicity down to 0.  For beta = 0 each
    power contributes one exponential function; for beta > 0 it
    contributes a sin/cos pair, so the basis has 2*(degree+multiplicity+1)
    members.
    """
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if multiplicity < 0:
        raise ValueError("multiplicity must be nonnegative")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    functions: List[BasisFunction] = []
    for power in range(degree + multiplicity, -1, -1):
        if beta == 0:
            functions.append(BasisFunction(power, alpha, beta, TrigKind.ONE))
        else:
            functions.append(BasisFunction(power, alpha, beta, TrigKind.SIN))
            functions.append(BasisFunction(power, alpha, beta, TrigKind.COS))
    return Basis(tuple(functions))


def coordinates(f: ForcingFunction, basis: Basis) -> Vector:
    """Coordinate vector of f in the basis; every term must lie in the span."""
    vec = [Fraction(0)] * len(basis)
    for term in f.terms:
        pos = basis.position((term.alpha, term.beta, term.power, term.trig))
        if pos is None:
            raise CoordinateError(
                f"term {ForcingFunction((term,))} is outside the basis span"
            )
        vec[pos] = term.coef
    return tuple(vec)


def from_coordinates(vector: Sequence[RationalLike], basis: Basis) -> ForcingFunction:
    """Rebuild the function with the given coordinates in the basis."""
    if len(vector) != len(basis):
        raise ValueError("coordinate vector length does not match basis size")
    return canonicalize(
        [bf.as_term(c) for c, bf in zip(vector, basis.functions) if as_rational(c) != 0]
    )


def build_matrix_operator(basis: Basis) -> MatrixOperator:
    """Matrix of d/dx on the span of the basis.

    Column j holds the coordinates of the derivative of basis function
    j.  build_basis outputs are always closed under d/dx; a basis that
    is not closed is a programming error, not bad input.
    """
    columns: List[Vector] = []
    for bf in basis.functions:
        derivative = differentiate(ForcingFunction((bf.as_term(),)))
        try:
            columns.append(coordinates(derivative, basis))
        except CoordinateError as exc:
            raise RuntimeError(
                f"basis is not closed under d/dx: {exc}"
            ) from exc
    return MatrixOperator(basis=basis, matrix=RatMatrix.from_columns(columns))


def operator_polynomial(poly: RatPoly, operator: MatrixOperator) -> MatrixOperator:
    """Evaluate a polynomial at the operator matrix (Horner's scheme)."""
    n = len(operator.basis)
    acc = RatMatrix.zeros(n, n)
    identity = RatMatrix.identity(n)
    for c in reversed(poly.coeffs):
        acc = acc @ operator.matrix + identity.scale(c)
    return MatrixOperator(basis=operator.basis, matrix=acc)


def apply(operator: MatrixOperator, vector: Sequence[RationalLike]) -> Vector:
    """Apply the operator to a coordinate vector."""
    return operator.matrix.matvec(vector)
