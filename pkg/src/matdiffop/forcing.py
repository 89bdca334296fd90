"""Forcing functions: sums c * x^p * e^(ax) * {1, sin bx, cos bx}.

This is the closed function class the solver works in: it is stable
under differentiation, and every member is described exactly by a
finite list of terms with rational data.  The module owns the canonical
term representation, the two input grammars (forcing expressions and
differential operators), symbolic differentiation, the split into
exponential/trigonometric modes, and numeric evaluation.

Canonical form: terms are sorted by (alpha, beta, power descending,
sin before cos), keys are pairwise distinct, coefficients are nonzero,
and beta is positive exactly on sin/cos terms.  Two canonical functions
are equal as functions iff they are equal as values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import ParseError, ZeroOperatorError
from .exactnum import RatPoly, RationalLike, as_rational


class TrigKind(Enum):
    ONE = "one"
    SIN = "sin"
    COS = "cos"


@dataclass(frozen=True)
class ForcingTerm:
    """One term c * x^power * e^(alpha x) * {1, sin(beta x), cos(beta x)}."""

    coef: Fraction
    power: int
    alpha: Fraction
    beta: Fraction
    trig: TrigKind

    def __post_init__(self):
        object.__setattr__(self, "coef", as_rational(self.coef))
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.coef == 0:
            raise ValueError("forcing term with zero coefficient")
        if self.power < 0:
            raise ValueError("forcing term with negative power")
        if self.trig is TrigKind.ONE:
            if self.beta != 0:
                raise ValueError("trig-free term must have beta = 0")
        elif self.beta <= 0:
            raise ValueError("sin/cos term must have beta > 0")

    @property
    def key(self) -> Tuple[Fraction, Fraction, int, TrigKind]:
        return (self.alpha, self.beta, self.power, self.trig)


def _term_order(t: ForcingTerm):
    return (t.alpha, t.beta, -t.power, 1 if t.trig is TrigKind.COS else 0)


RawTerm = Union[
    ForcingTerm, Tuple[RationalLike, int, RationalLike, RationalLike, TrigKind]
]


@dataclass(frozen=True)
class ForcingFunction:
    """A canonical sum of forcing terms; the empty sum is the zero function."""

    terms: Tuple[ForcingTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        keys = [_term_order(t) for t in self.terms]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("terms are not in canonical order")

    @classmethod
    def zero(cls) -> "ForcingFunction":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return format_forcing(self)


@dataclass(frozen=True)
class Mode:
    """All terms sharing one exponential/trigonometric part (alpha, beta).

    degree is the largest x power occurring among the terms.
    """

    alpha: Fraction
    beta: Fraction
    degree: int
    terms: Tuple[ForcingTerm, ...]

    def as_function(self) -> ForcingFunction:
        return ForcingFunction(self.terms)


def canonicalize(terms: Iterable[RawTerm]) -> ForcingFunction:
    """Normalize a raw term list into a canonical ForcingFunction.

    Raw terms may carry negative or zero beta: sin(-bx) folds to
    -sin(bx), cos(-bx) to cos(bx), sin(0x) vanishes and cos(0x) is 1.
    Duplicate keys are merged and zero coefficients dropped.
    """
    bucket: dict = {}
    for raw in terms:
        if isinstance(raw, ForcingTerm):
            coef, power, alpha, beta, trig = (
                raw.coef, raw.power, raw.alpha, raw.beta, raw.trig,
            )
        else:
            coef, power, alpha, beta, trig = raw
        coef = as_rational(coef)
        alpha = as_rational(alpha)
        beta = as_rational(beta)
        if power < 0:
            raise ValueError("forcing term with negative power")
        if coef == 0:
            continue
        if trig is TrigKind.ONE:
            if beta != 0:
                raise ValueError("trig-free term must have beta = 0")
        else:
            if beta < 0:
                if trig is TrigKind.SIN:
                    coef = -coef
                beta = -beta
            if beta == 0:
                if trig is TrigKind.SIN:
                    continue
                trig = TrigKind.ONE
        key = (alpha, beta, power, trig)
        bucket[key] = bucket.get(key, Fraction(0)) + coef
    collected = [
        ForcingTerm(c, power=k[2], alpha=k[0], beta=k[1], trig=k[3])
        for k, c in bucket.items()
        if c != 0
    ]
    collected.sort(key=_term_order)
    return ForcingFunction(tuple(collected))


def add(f: ForcingFunction, g: ForcingFunction) -> ForcingFunction:
    return canonicalize(f.terms + g.terms)


def scale(f: ForcingFunction, c: RationalLike) -> ForcingFunction:
    c = as_rational(c)
    if c == 0:
        return ForcingFunction.zero()
    return canonicalize(
        [(t.coef * c, t.power, t.alpha, t.beta, t.trig) for t in f.terms]
    )


def differentiate(f: ForcingFunction) -> ForcingFunction:
    """Exact derivative; the function class is closed under d/dx."""
    raw: List[tuple] = []
    for t in f.terms:
        if t.power > 0:
            raw.append((t.coef * t.power, t.power - 1, t.alpha, t.beta, t.trig))
        if t.alpha != 0:
            raw.append((t.coef * t.alpha, t.power, t.alpha, t.beta, t.trig))
        if t.trig is TrigKind.SIN:
            raw.append((t.coef * t.beta, t.power, t.alpha, t.beta, TrigKind.COS))
        elif t.trig is TrigKind.COS:
            raw.append((-t.coef * t.beta, t.power, t.alpha, t.beta, TrigKind.SIN))
    return canonicalize(raw)


def split_modes(f: ForcingFunction) -> List[Mode]:
    """Partition a canonical function into its (alpha, beta) modes."""
    modes: List[Mode] = []
    group: List[ForcingTerm] = []
    for t in f.terms:
        if group and (t.alpha, t.beta) != (group[0].alpha, group[0].beta):
            modes.append(_close_mode(group))
            group = []
        group.append(t)
    if group:
        modes.append(_close_mode(group))
    return modes


def _close_mode(group: List[ForcingTerm]) -> Mode:
    return Mode(
        alpha=group[0].alpha,
        beta=group[0].beta,
        degree=max(t.power for t in group),
        terms=tuple(group),
    )


def is_polynomial(f: ForcingFunction) -> bool:
    return all(t.alpha == 0 and t.trig is TrigKind.ONE for t in f.terms)


def evaluate_numeric(f: ForcingFunction, x: float) -> float:
    """Evaluate at a float point; the only non-exact operation offered."""
    total = 0.0
    for t in f.terms:
        value = float(t.coef) * x ** t.power * math.exp(float(t.alpha) * x)
        if t.trig is TrigKind.SIN:
            value *= math.sin(float(t.beta) * x)
        elif t.trig is TrigKind.COS:
            value *= math.cos(float(t.beta) * x)
        total += value
    return total


def format_forcing(f: ForcingFunction) -> str:
    """Canonical text form; parse_forcing(format_forcing(f)) == f.

    Rates are always explicit ("e^(1x)", "sin(3x)") so the output stays
    inside the input grammar.
    """
    if f.is_zero:
        return "0"
    parts: List[str] = []
    for i, t in enumerate(f.terms):
        body = _format_term(t)
        if i == 0:
            parts.append("-" + body if t.coef < 0 else body)
        else:
            parts.append((" - " if t.coef < 0 else " + ") + body)
    return "".join(parts)


def _format_term(t: ForcingTerm) -> str:
    factors: List[str] = []
    if t.power == 1:
        factors.append("x")
    elif t.power > 1:
        factors.append(f"x^{t.power}")
    if t.alpha != 0:
        factors.append(f"e^({t.alpha}x)")
    if t.trig is TrigKind.SIN:
        factors.append(f"sin({t.beta}x)")
    elif t.trig is TrigKind.COS:
        factors.append(f"cos({t.beta}x)")
    magnitude = abs(t.coef)
    if not factors or magnitude != 1:
        factors.insert(0, str(magnitude))
    return "*".join(factors)


# --------------------------------------------------------------------------
# Input grammars.
#
# Forcing expressions:
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (['*'] factor)*
#   factor := rational | 'x' ['^' uint]
#           | 'e' '^' '(' rate ')' | ('sin'|'cos') '(' rate ')'
#   rate   := ['+'|'-'] [rational ['*']] 'x'
#   rational := uint ['/' uint]
#
# Operators, a polynomial in D with y-notation sugar (y'' means D^2):
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (['*'] factor)*
#   factor := ['-'] atom ['^' uint]
#   atom   := rational | 'D' | 'y' primes | "y^(" uint ")" | '(' expr ')'
#
# Whitespace is insignificant; juxtaposition acts as multiplication.
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[-+*/^()'])")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] == ".":
            raise ParseError("non-rational literal; use p/q form", pos)
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Scanner:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect_sym(self, sym: str) -> _Token:
        tok = self.peek()
        if tok.kind != "sym" or tok.text != sym:
            raise ParseError(f"expected {sym!r}", tok.pos)
        return self.advance()

    def at_sym(self, *syms: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.text in syms

    def uint(self, what: str) -> int:
        tok = self.peek()
        if tok.kind != "num":
            raise ParseError(f"expected {what}", tok.pos)
        self.advance()
        return int(tok.text)

    def rational(self) -> Fraction:
        num = self.uint("a number")
        if self.at_sym("/"):
            self.advance()
            pos = self.peek().pos
            den = self.uint("a denominator")
            if den == 0:
                raise ParseError("zero denominator", pos)
            return Fraction(num, den)
        return Fraction(num)


def parse_forcing(text: str) -> ForcingFunction:
    """Parse a forcing expression into canonical form."""
    sc = _Scanner(text)
    raw: List[tuple] = []
    sign = 1
    if sc.at_sym("+", "-"):
        sign = -1 if sc.advance().text == "-" else 1
    while True:
        raw.append(_forcing_term(sc, sign))
        tok = sc.peek()
        if tok.kind == "end":
            break
        if tok.kind == "sym" and tok.text in "+-":
            sc.advance()
            sign = -1 if tok.text == "-" else 1
            continue
        raise ParseError("expected '+' or '-' between terms", tok.pos)
    return canonicalize(raw)


def _forcing_term(sc: _Scanner, sign: int) -> tuple:
    coef = Fraction(sign)
    power = 0
    alpha = Fraction(0)
    beta = Fraction(0)
    trig = TrigKind.ONE
    saw_factor = False
    while True:
        tok = sc.peek()
        if tok.kind == "sym" and tok.text == "*":
            if not saw_factor:
                raise ParseError("expected a factor before '*'", tok.pos)
            sc.advance()
            tok = sc.peek()
            if not _starts_forcing_factor(tok):
                raise ParseError("expected a factor after '*'", tok.pos)
            continue
        if not _starts_forcing_factor(tok):
            break
        saw_factor = True
        if tok.kind == "num":
            coef *= sc.rational()
            continue
        name = tok.text
        if name == "x":
            sc.advance()
            if sc.at_sym("^"):
                sc.advance()
                power += sc.uint("an exponent")
            else:
                power += 1
            continue
        if name == "e":
            sc.advance()
            sc.expect_sym("^")
            sc.expect_sym("(")
            alpha += _rate(sc)
            sc.expect_sym(")")
            continue
        if name in ("sin", "cos"):
            if trig is not TrigKind.ONE:
                raise ParseError("more than one sin/cos factor in a term", tok.pos)
            sc.advance()
            sc.expect_sym("(")
            beta = _rate(sc)
            sc.expect_sym(")")
            trig = TrigKind.SIN if name == "sin" else TrigKind.COS
            continue
        raise ParseError(f"unknown symbol {name!r}", tok.pos)
    if not saw_factor:
        raise ParseError("expected a term", sc.peek().pos)
    return (coef, power, alpha, beta, trig)


def _starts_forcing_factor(tok: _Token) -> bool:
    if tok.kind == "num":
        return True
    return tok.kind == "name" and tok.text in ("x", "e", "sin", "cos")


def _rate(sc: _Scanner) -> Fraction:
    """Parse the linear rate inside e^(...) or sin/cos(...): [sign][q]x."""
    sign = 1
    if sc.at_sym("+", "-"):
        sign = -1 if sc.advance().text == "-" else 1
    value = Fraction(1)
    if sc.peek().kind == "num":
        value = sc.rational()
        if sc.at_sym("*"):
            sc.advance()
    tok = sc.peek()
    if tok.kind != "name" or tok.text != "x":
        raise ParseError("expected 'x' in the rate", tok.pos)
    sc.advance()
    return sign * value


def parse_operator(text: str) -> RatPoly:
    """Parse a constant-coefficient operator into its polynomial in D.

    Accepts both polynomial notation ("(D-2)^2*(D+4)^2", "D^2+1") and
    derivative notation ("y'' - 4*y' + 13*y", "y^(4) + y").  The zero
    operator is rejected.
    """
    sc = _Scanner(text)
    poly, _ = _op_expr(sc)
    tok = sc.peek()
    if tok.kind != "end":
        raise ParseError("unexpected trailing input", tok.pos)
    if poly.is_zero:
        raise ZeroOperatorError("zero operator")
    return poly


def _op_expr(sc: _Scanner) -> Tuple[RatPoly, bool]:
    sign = 1
    if sc.at_sym("+", "-"):
        sign = -1 if sc.advance().text == "-" else 1
    poly, has_y = _op_term(sc)
    if sign < 0:
        poly = -poly
    while sc.at_sym("+", "-"):
        op = sc.advance().text
        rhs, rhs_y = _op_term(sc)
        poly = poly - rhs if op == "-" else poly + rhs
        has_y = has_y or rhs_y
    return poly, has_y


def _op_term(sc: _Scanner) -> Tuple[RatPoly, bool]:
    poly, has_y = _op_factor(sc)
    while True:
        tok = sc.peek()
        if tok.kind == "sym" and tok.text == "*":
            sc.advance()
            rhs, rhs_y = _op_factor(sc)
        elif _starts_op_factor(tok):
            rhs, rhs_y = _op_factor(sc)
        else:
            return poly, has_y
        if has_y and rhs_y:
            raise ParseError("operator is nonlinear in y", tok.pos)
        poly = poly * rhs
        has_y = has_y or rhs_y


def _starts_op_factor(tok: _Token) -> bool:
    if tok.kind == "num":
        return True
    if tok.kind == "name" and tok.text in ("D", "y"):
        return True
    return tok.kind == "sym" and tok.text == "("


def _op_factor(sc: _Scanner) -> Tuple[RatPoly, bool]:
    if sc.at_sym("-"):
        sc.advance()
        poly, has_y = _op_factor(sc)
        return -poly, has_y
    poly, has_y = _op_atom(sc)
    if sc.at_sym("^"):
        tok = sc.advance()
        exponent = sc.uint("an exponent")
        if has_y:
            if exponent != 1:
                raise ParseError("operator is nonlinear in y", tok.pos)
        else:
            poly = poly ** exponent
    return poly, has_y


def _op_atom(sc: _Scanner) -> Tuple[RatPoly, bool]:
    tok = sc.peek()
    if tok.kind == "num":
        return RatPoly.constant(sc.rational()), False
    if tok.kind == "name" and tok.text == "D":
        sc.advance()
        return RatPoly.monomial(1), False
    if tok.kind == "name" and tok.text == "y":
        sc.advance()
        order = 0
        while sc.at_sym("'"):
            sc.advance()
            order += 1
        if order == 0 and sc.at_sym("^") and sc.peek(1).text == "(":
            sc.advance()
            sc.expect_sym("(")
            order = sc.uint("a derivative order")
            sc.expect_sym(")")
        return RatPoly.monomial(order), True
    if tok.kind == "sym" and tok.text == "(":
        sc.advance()
        poly, has_y = _op_expr(sc)
        sc.expect_sym(")")
        return poly, has_y
    if tok.kind == "name":
        raise ParseError(f"unknown symbol {tok.text!r}", tok.pos)
    raise ParseError("expected a rational, 'D', 'y', or '('", tok.pos)
