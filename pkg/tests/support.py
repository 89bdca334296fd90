"""Seeded random generators shared by the property and acceptance tests.

Everything takes an explicit random.Random so test runs are
reproducible; the acceptance suite freezes its seeds.
"""

from fractions import Fraction
from random import Random
from typing import List, Tuple

from matdiffop.exactnum import RatPoly
from matdiffop.forcing import ForcingFunction, TrigKind, canonicalize
from matdiffop.linalg import RatMatrix


def rand_fraction(
    rng: Random,
    lo: int = -5,
    hi: int = 5,
    max_den: int = 3,
    nonzero: bool = False,
) -> Fraction:
    while True:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
        if q != 0 or not nonzero:
            return q


def rand_matrix(rng: Random, max_dim: int = 8) -> RatMatrix:
    nrows = rng.randint(1, max_dim)
    ncols = rng.randint(1, max_dim)
    return RatMatrix(
        [[rand_fraction(rng) for _ in range(ncols)] for _ in range(nrows)]
    )


def rand_regular(rng: Random, n: int) -> RatMatrix:
    """Regular n x n matrix as a unit lower times a regular upper factor."""
    lower = [
        [
            rand_fraction(rng, -3, 3)
            if j < i
            else (Fraction(1) if i == j else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    upper = [
        [
            rand_fraction(rng, -3, 3, nonzero=True)
            if i == j
            else (rand_fraction(rng, -3, 3) if j > i else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return RatMatrix(lower) @ RatMatrix(upper)


def rand_shell(rng: Random, max_order: int = 8) -> RatMatrix:
    """Square matrix in shell form with a regular bottom-left block."""
    n = rng.randint(2, max_order)
    r = rng.randint(1, n - 1)
    block = rand_regular(rng, r)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            rows[n - r + i][j] = block.rows[i][j]
    return RatMatrix(rows)


def rand_rank_deficient(rng: Random, max_dim: int = 8) -> RatMatrix:
    """Product of thin factors, so the rank is at most the inner size."""
    nrows = rng.randint(2, max_dim)
    ncols = rng.randint(2, max_dim)
    inner = rng.randint(1, min(nrows, ncols) - 1)
    left = RatMatrix(
        [[rand_fraction(rng, -3, 3) for _ in range(inner)] for _ in range(nrows)]
    )
    right = RatMatrix(
        [[rand_fraction(rng, -3, 3) for _ in range(ncols)] for _ in range(inner)]
    )
    return left @ right


def rand_forcing(rng: Random, pairs: List[Tuple[Fraction, Fraction]]) -> ForcingFunction:
    """Random nonzero forcing supported on the given (alpha, beta) pairs."""
    while True:
        raw = []
        for alpha, beta in pairs:
            for _ in range(rng.randint(1, 2)):
                coef = rand_fraction(rng, -3, 3, max_den=2, nonzero=True)
                power = rng.randint(0, 3)
                if beta == 0:
                    trig = TrigKind.ONE
                else:
                    trig = rng.choice([TrigKind.SIN, TrigKind.COS])
                raw.append((coef, power, alpha, beta, trig))
        f = canonicalize(raw)
        if not f.is_zero:
            return f


def rand_mode_pairs(rng: Random, polynomial_only: bool) -> List[Tuple[Fraction, Fraction]]:
    if polynomial_only:
        return [(Fraction(0), Fraction(0))]
    pairs = set()
    target = rng.randint(1, 3)
    while len(pairs) < target:
        alpha = Fraction(rng.randint(-2, 2), rng.choice([1, 1, 2]))
        beta = Fraction(rng.randint(0, 2), rng.choice([1, 1, 2]))
        pairs.add((alpha, beta))
    return sorted(pairs)


def rand_operator(
    rng: Random, pairs: List[Tuple[Fraction, Fraction]], max_degree: int = 4
) -> RatPoly:
    """Random nonzero operator of degree <= max_degree.

    With some probability the operator is built to be resonant with one
    of the given modes (the mode's root becomes a root of multiplicity
    one or two), which exercises the pseudoinverse paths.
    """
    if pairs and rng.random() < 0.4:
        alpha, beta = rng.choice(pairs)
        if beta == 0:
            factor = RatPoly([-alpha, 1])
        else:
            factor = RatPoly([alpha * alpha + beta * beta, -2 * alpha, 1])
        k = rng.choice([1, 1, 2])
        base = factor ** k
        while base.degree > max_degree:
            k -= 1
            base = factor ** k
        room = max_degree - base.degree
        extra_degree = rng.randint(0, room)
        extra = _rand_poly(rng, extra_degree)
        return base * extra
    degree = rng.randint(1, max_degree)
    return _rand_poly(rng, degree)


def _rand_poly(rng: Random, degree: int) -> RatPoly:
    coeffs = [rand_fraction(rng, -5, 5, max_den=2) for _ in range(degree)]
    coeffs.append(rand_fraction(rng, -5, 5, max_den=2, nonzero=True))
    return RatPoly(coeffs)


def rand_instance(rng: Random) -> Tuple[RatPoly, ForcingFunction]:
    """One random solve instance: (operator, right-hand side)."""
    polynomial_only = rng.random() < 0.25
    pairs = rand_mode_pairs(rng, polynomial_only)
    rhs = rand_forcing(rng, pairs)
    operator = rand_operator(rng, pairs)
    return operator, rhs
