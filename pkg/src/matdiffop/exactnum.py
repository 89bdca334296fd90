"""Exact scalar arithmetic: rationals, Gaussian rationals, polynomials.

Everything in this package computes over the rationals.  Plain rational
numbers are `fractions.Fraction` values, which are always normalized
(lowest terms, positive denominator).  `GaussianRational` adjoins the
imaginary unit so characteristic polynomials can be evaluated at complex
roots a + bi without leaving exact arithmetic.  `RatPoly` is a dense
univariate polynomial over the rationals, used both for characteristic
polynomials in the operator variable and for Maclaurin expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

RationalLike = Union[int, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int or Fraction to Fraction; reject floats.

    Floats are refused on purpose: silently converting 0.1 to
    3602879701896397/36028797018963968 would defeat the exactness
    guarantee.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class GaussianRational:
    """A complex number re + im*i with rational parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def _coerce(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


class RatPoly:
    """Dense univariate polynomial over the rationals, lowest degree first.

    The coefficient tuple never has a trailing zero, so the empty tuple
    is the unique representation of the zero polynomial and the leading
    coefficient of any nonzero polynomial is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, value: RationalLike) -> "RatPoly":
        return cls([value])

    @classmethod
    def monomial(cls, power: int, coef: RationalLike = 1) -> "RatPoly":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        return cls([0] * power + [coef])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(
            [self.coefficient(i) + other.coefficient(i) for i in range(n)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = RatPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({list(self.coeffs)!r})"


def _coerce_poly(value) -> "RatPoly":
    if isinstance(value, RatPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return RatPoly([value])
    return NotImplemented


def poly_eval(p: RatPoly, z):
    """Evaluate p at z by Horner's scheme.

    z may be a Fraction, an int, or a GaussianRational; the result has
    the same kind.
    """
    if isinstance(z, int):
        z = Fraction(z)
    acc = Fraction(0) if isinstance(z, Fraction) else GaussianRational(0)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def poly_derivative(p: RatPoly) -> RatPoly:
    return RatPoly([i * c for i, c in enumerate(p.coeffs)][1:])


def root_multiplicity(p: RatPoly, z) -> int:
    """Smallest k with the k-th derivative of p nonzero at z.

    A point that is not a root has multiplicity 0.  The multiplicity of
    the zero polynomial is undefined.
    """
    if p.is_zero:
        raise ValueError("undefined multiplicity: zero polynomial")
    if isinstance(z, (int, Fraction)):
        z = GaussianRational(z)
    k = 0
    current = p
    while True:
        value = poly_eval(current, z)
        if value != GaussianRational(0):
            return k
        k += 1
        current = poly_derivative(current)
