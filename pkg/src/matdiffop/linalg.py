"""Exact linear algebra over the rationals.

Everything here is elimination-based and exact; there are no floating
point operations and no thresholds.  Rank, inverse, null space, and the
Moore-Penrose pseudoinverse are all computed with Fraction arithmetic,
so every equality test below is a genuine equality.

The pseudoinverse has a closed form for "shell" matrices (square, first
n-r rows zero, last n-r columns zero, regular bottom-left r x r block):
place the inverse of the bottom-left block in the top-right corner.
Operator polynomials evaluated at a root of matching multiplicity
produce exactly this shape, which is why it gets a fast path.  General
matrices go through a full-rank factorization A = C F, for which
A+ = F^T (F F^T)^-1 (C^T C)^-1 C^T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import SingularMatrixError, UnsolvableError
from .exactnum import RationalLike, as_rational

Vector = Tuple[Fraction, ...]


class RatMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        built = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not built:
            raise ValueError("matrix needs at least one row")
        width = len(built[0])
        if width == 0 or any(len(r) != width for r in built):
            raise ValueError("rows must be nonempty and of equal length")
        self.rows = built

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]]) -> "RatMatrix":
        return cls(list(zip(*columns)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows))

    def scale(self, c: RationalLike) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * x for x in row] for row in self.rows])

    def matvec(self, v: Sequence[RationalLike]) -> Vector:
        v = [as_rational(x) for x in v]
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix width")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions do not match")
        cols = [other.column(j) for j in range(other.ncols)]
        return RatMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def _check_same_shape(self, other: "RatMatrix"):
        if not isinstance(other, RatMatrix):
            raise TypeError("expected a RatMatrix")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shapes do not match")

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"RatMatrix([{body}])"


@dataclass(frozen=True)
class ShellShape:
    """Witness that a square matrix has the shell block layout.

    rank is the size of the regular bottom-left block, order the size of
    the whole matrix; 1 <= rank < order always holds (invertible and
    zero matrices are not shells).
    """

    rank: int
    order: int

    def __post_init__(self):
        if not (1 <= self.rank < self.order):
            raise ValueError("shell needs 1 <= rank < order")


def _rref(matrix: RatMatrix) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form; pivot = first nonzero entry per column."""
    m = [list(row) for row in matrix.rows]
    nrows, ncols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        d = m[r][c]
        m[r] = [x / d for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank(matrix: RatMatrix) -> int:
    _, pivots = _rref(matrix)
    return len(pivots)


def invert(matrix: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not matrix.is_square:
        raise ValueError("only square matrices can be inverted")
    n = matrix.nrows
    m = [
        list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(matrix.rows)
    ]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        m[c], m[pivot_row] = m[pivot_row], m[c]
        d = m[c][c]
        m[c] = [x / d for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return RatMatrix([row[n:] for row in m])


def null_space(matrix: RatMatrix) -> List[Vector]:
    """Basis of the right null space, one vector per free column."""
    m, pivots = _rref(matrix)
    ncols = matrix.ncols
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(tuple(v))
    return basis


def detect_shell(matrix: RatMatrix) -> ShellShape | None:
    """Recognize the shell layout; None for invertible or zero matrices."""
    if not matrix.is_square:
        return None
    n = matrix.nrows
    r = rank(matrix)
    if r == 0 or r == n:
        return None
    zero_band = n - r
    for i in range(zero_band):
        if any(x != 0 for x in matrix.rows[i]):
            return None
    for row in matrix.rows:
        if any(x != 0 for x in row[n - zero_band:]):
            return None
    # All mass sits in the bottom-left r x r block, so that block carries
    # the full rank r and is automatically regular.
    return ShellShape(rank=r, order=n)


def pinv_shell(matrix: RatMatrix, shape: ShellShape) -> RatMatrix:
    """Pseudoinverse of a shell matrix: inverse block moved to the top right."""
    r, n = shape.rank, shape.order
    block = RatMatrix([row[:r] for row in matrix.rows[n - r:]])
    block_inv = invert(block)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            out[i][n - r + j] = block_inv.rows[i][j]
    return RatMatrix(out)


def pinv_general(matrix: RatMatrix) -> RatMatrix:
    """Moore-Penrose pseudoinverse via full-rank factorization.

    Write A = C F with C the pivot columns of A and F the nonzero rows
    of rref(A); then A+ = F^T (F F^T)^-1 (C^T C)^-1 C^T.  The zero
    matrix maps to the zero matrix of transposed shape.
    """
    m, pivots = _rref(matrix)
    r = len(pivots)
    if r == 0:
        return RatMatrix.zeros(matrix.ncols, matrix.nrows)
    c_factor = RatMatrix.from_columns([matrix.column(j) for j in pivots])
    f_factor = RatMatrix(m[:r])
    ft = f_factor.transpose()
    ct = c_factor.transpose()
    return ft @ invert(f_factor @ ft) @ invert(ct @ c_factor) @ ct


def penrose_check(matrix: RatMatrix, candidate: RatMatrix) -> Tuple[bool, bool, bool, bool]:
    """The four Penrose conditions for candidate as pseudoinverse of matrix.

    Returns (AXA=A, XAX=X, (AX)^T=AX, (XA)^T=XA); all four hold exactly
    iff candidate is the Moore-Penrose pseudoinverse.
    """
    a, x = matrix, candidate
    if (x.nrows, x.ncols) != (a.ncols, a.nrows):
        raise ValueError("candidate has the wrong shape")
    ax = a @ x
    xa = x @ a
    return (
        ax @ a == a,
        xa @ x == x,
        ax.transpose() == ax,
        xa.transpose() == xa,
    )


def solve_detailed(
    matrix: RatMatrix, rhs: Sequence[RationalLike]
) -> Tuple[Vector, str, RatMatrix]:
    """Solve A x = b exactly; also report which inverse did the work.

    Returns (x, path, resolvent) with path one of "inverse",
    "shell-pseudoinverse", "general-pseudoinverse".  For the
    pseudoinverse paths the solution candidate A+ b is accepted only if
    it reproduces b exactly; otherwise the system has no solution.
    """
    b = tuple(as_rational(x) for x in rhs)
    if len(b) != matrix.nrows:
        raise ValueError("right-hand side length does not match")
    if matrix.is_square:
        try:
            inverse = invert(matrix)
            return inverse.matvec(b), "inverse", inverse
        except SingularMatrixError:
            pass
    shape = detect_shell(matrix)
    if shape is not None:
        pinv = pinv_shell(matrix, shape)
        path = "shell-pseudoinverse"
    else:
        pinv = pinv_general(matrix)
        path = "general-pseudoinverse"
    x = pinv.matvec(b)
    if matrix.matvec(x) != b:
        raise UnsolvableError("system is unsolvable: A A+ b differs from b")
    return x, path, pinv


def solve(matrix: RatMatrix, rhs: Sequence[RationalLike]) -> Vector:
    """Exact solution of A x = b, or UnsolvableError if none exists."""
    x, _, _ = solve_detailed(matrix, rhs)
    return x
