"""Command line front end.

Exit codes: 0 success, 1 parse error, 2 solve error (zero operator,
Maclaurin on a non-polynomial, unsolvable system), 3 verification
failure (an internal bug surfaced).

Text output stays inside the input grammar, so it can be piped back in.
JSON output has a fixed key order and renders byte-identically for the
same solution.  The --show-work trace goes to the main output for text
and latex formats and to stderr for json, keeping json parseable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, TextIO

from .errors import (
    MatDiffOpError,
    NonPolynomialError,
    ParseError,
    UnsolvableError,
    VerificationError,
    ZeroOperatorError,
)
from .exactnum import RatPoly
from .forcing import (
    ForcingFunction,
    ForcingTerm,
    TrigKind,
    format_forcing,
    parse_forcing,
    parse_operator,
)
from .linalg import RatMatrix
from .solver import Method, ModeWork, Solution, particular_solution


class OutputFormat(Enum):
    TEXT = "text"
    LATEX = "latex"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    """One solve request, fully described."""

    operator_text: Optional[str] = None
    rhs_text: Optional[str] = None
    method: Method = Method.MATRIX_MULTIPLICITY
    format: OutputFormat = OutputFormat.TEXT
    show_work: bool = False
    verify: bool = True
    integrate_mode: bool = False


def render(solution: Solution, fmt: OutputFormat) -> str:
    """Render a solution in the requested format (no trailing newline)."""
    if fmt is OutputFormat.TEXT:
        return format_forcing(solution.expression)
    if fmt is OutputFormat.LATEX:
        return _latex_function(solution.expression)
    payload = {
        "terms": [_json_term(t) for t in solution.expression.terms],
        "residual_zero": solution.residual.is_zero,
        "method": solution.method.value,
    }
    return json.dumps(payload)


def _json_term(t: ForcingTerm) -> dict:
    return {
        "coef": str(t.coef),
        "power": t.power,
        "alpha": str(t.alpha),
        "beta": str(t.beta),
        "trig": t.trig.value,
    }


def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _latex_rate(q: Fraction) -> str:
    if q == 1:
        return ""
    if q == -1:
        return "-"
    return _latex_rational(q)


def _latex_term(t: ForcingTerm) -> str:
    parts: List[str] = []
    if t.power == 1:
        parts.append("x")
    elif t.power > 1:
        parts.append(f"x^{{{t.power}}}")
    if t.alpha != 0:
        parts.append(f"e^{{{_latex_rate(t.alpha)}x}}")
    if t.trig is TrigKind.SIN:
        parts.append(f"\\sin{{{_latex_rate(t.beta)}x}}")
    elif t.trig is TrigKind.COS:
        parts.append(f"\\cos{{{_latex_rate(t.beta)}x}}")
    magnitude = abs(t.coef)
    if not parts or magnitude != 1:
        parts.insert(0, _latex_rational(magnitude))
    return "".join(parts)


def _latex_function(f: ForcingFunction) -> str:
    if f.is_zero:
        return "0"
    chunks: List[str] = []
    for i, t in enumerate(f.terms):
        body = _latex_term(t)
        if i == 0:
            chunks.append("-" + body if t.coef < 0 else body)
        else:
            chunks.append((" - " if t.coef < 0 else " + ") + body)
    return "".join(chunks)


def _format_matrix(m: RatMatrix, indent: str = "    ") -> str:
    cells = [[str(x) for x in row] for row in m.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(
        indent + "[ " + "  ".join(c.rjust(width) for c in row) + " ]"
        for row in cells
    )


def _format_vector(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _write_work(solution: Solution, sink: TextIO):
    if not solution.work_log:
        sink.write("no matrix trace for this method\n")
        return
    for work in solution.work_log:
        sink.write(
            f"mode alpha={work.mode.alpha} beta={work.mode.beta} "
            f"degree={work.mode.degree} multiplicity={work.multiplicity}\n"
        )
        sink.write(f"basis {work.basis}\n")
        sink.write("derivative matrix:\n")
        sink.write(_format_matrix(work.derivative_matrix) + "\n")
        sink.write("operator matrix:\n")
        sink.write(_format_matrix(work.operator_matrix) + "\n")
        sink.write(f"solved via {work.path}:\n")
        sink.write(_format_matrix(work.resolvent) + "\n")
        sink.write(f"rhs coordinates {_format_vector(work.rhs)}\n")
        sink.write(f"solution coordinates {_format_vector(work.coordinates)}\n")


def run(config: RunConfig, out: TextIO) -> int:
    """Solve one request, write the rendered result to out.

    Returns the process exit code instead of raising.
    """
    if config.rhs_text is None:
        print("error: no right-hand side given", file=sys.stderr)
        return 1
    if config.integrate_mode:
        if config.operator_text is not None:
            print(
                "error: --integrate fixes the operator; drop --op/--ode",
                file=sys.stderr,
            )
            return 1
        operator = RatPoly.monomial(1)
    else:
        if config.operator_text is None:
            print("error: no operator given", file=sys.stderr)
            return 1
        try:
            operator = parse_operator(config.operator_text)
        except ParseError as exc:
            print(f"parse error in operator: {exc}", file=sys.stderr)
            return 1
        except ZeroOperatorError as exc:
            print(f"solve error: {exc}", file=sys.stderr)
            return 2
    try:
        rhs = parse_forcing(config.rhs_text)
    except ParseError as exc:
        print(f"parse error in right-hand side: {exc}", file=sys.stderr)
        return 1
    try:
        solution = particular_solution(
            operator, rhs, config.method, verify=config.verify
        )
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except (NonPolynomialError, UnsolvableError, ZeroOperatorError) as exc:
        print(f"solve error: {exc}", file=sys.stderr)
        return 2
    if config.show_work:
        work_sink = sys.stderr if config.format is OutputFormat.JSON else out
        _write_work(solution, work_sink)
    line = render(solution, config.format)
    if config.integrate_mode and config.format is not OutputFormat.JSON:
        line += " + C"
    out.write(line + "\n")
    return 0


def _run_batch(source: TextIO, base: RunConfig, out: TextIO) -> int:
    """One problem per line, "operator ; rhs".  Lines render in order."""
    worst = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count(";") != 1:
            print(
                f"line {lineno}: expected exactly one ';' separator",
                file=sys.stderr,
            )
            out.write("error\n")
            worst = max(worst, 1)
            continue
        op_text, rhs_text = (part.strip() for part in line.split(";"))
        config = replace(base, operator_text=op_text, rhs_text=rhs_text)
        code = run(config, out)
        if code != 0:
            print(f"line {lineno}: exit code {code}", file=sys.stderr)
            out.write("error\n")
            worst = max(worst, code)
    return worst


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matdiffop",
        description=(
            "Exact particular solutions of constant-coefficient linear ODEs "
            "with forcing terms c*x^p*e^(ax)*{1, sin(bx), cos(bx)}."
        ),
    )
    parser.add_argument("--op", help="operator, e.g. \"D^2-4D+13\" or \"y''-4y'+13y\"")
    parser.add_argument("--rhs", help='right-hand side, e.g. "2*x*e^(2x)*cos(3x)"')
    parser.add_argument(
        "--ode", help='whole equation "LHS = RHS"; excludes --op/--rhs'
    )
    parser.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=Method.MATRIX_MULTIPLICITY.value,
        help="solution method (default: matrix)",
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="output format (default: text)",
    )
    parser.add_argument(
        "--show-work",
        action="store_true",
        help="print the matrices and coordinate vectors used",
    )
    parser.add_argument(
        "--no-verify",
        action="store_true",
        help="skip the symbolic substitute-back check",
    )
    parser.add_argument(
        "--integrate",
        action="store_true",
        help="integrate the right-hand side (operator fixed to D)",
    )
    parser.add_argument(
        "--batch",
        metavar="FILE",
        help='solve one "operator ; rhs" problem per line; "-" reads stdin',
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.ode is not None and (args.op is not None or args.rhs is not None):
        print("error: --ode excludes --op and --rhs", file=sys.stderr)
        return 1
    if args.batch is not None and (
        args.ode is not None
        or args.op is not None
        or args.rhs is not None
        or args.integrate
    ):
        print(
            "error: --batch excludes --op, --rhs, --ode and --integrate",
            file=sys.stderr,
        )
        return 1
    operator_text = args.op
    rhs_text = args.rhs
    if args.ode is not None:
        if args.ode.count("=") != 1:
            print("error: --ode needs exactly one '='", file=sys.stderr)
            return 1
        operator_text, rhs_text = (part.strip() for part in args.ode.split("="))
    config = RunConfig(
        operator_text=operator_text,
        rhs_text=rhs_text,
        method=Method(args.method),
        format=OutputFormat(args.format),
        show_work=args.show_work,
        verify=not args.no_verify,
        integrate_mode=args.integrate,
    )
    if args.batch is not None:
        if args.batch == "-":
            return _run_batch(sys.stdin, config, sys.stdout)
        try:
            with open(args.batch, "r", encoding="utf-8") as handle:
                return _run_batch(handle, config, sys.stdout)
        except OSError as exc:
            print(f"error: cannot read batch file: {exc}", file=sys.stderr)
            return 1
    return run(config, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
