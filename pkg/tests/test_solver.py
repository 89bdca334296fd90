"""End-to-end particular solutions: matrix methods and Maclaurin series."""

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matdiffop.errors import NonPolynomialError, ZeroOperatorError
from matdiffop.exactnum import RatPoly
from matdiffop.forcing import (
    ForcingFunction,
    add,
    differentiate,
    is_polynomial,
    parse_forcing,
    split_modes,
)
from matdiffop.solver import (
    Method,
    integrate,
    maclaurin_coefficients,
    particular_solution,
    solve_mode_adaptive,
    solve_mode_multiplicity,
    solve_poly_maclaurin,
    verify_particular,
)

from support import rand_instance

F = Fraction


def _single_mode(text):
    modes = split_modes(parse_forcing(text))
    assert len(modes) == 1
    return modes[0]


def _poly(*coeffs_lowest_first):
    return RatPoly(list(coeffs_lowest_first))


# ---------------------------------------------------------------------------
# single-mode solves at the exact root multiplicity


def test_mode_solve_simple_resonance_with_d():
    basis, vector = solve_mode_multiplicity(_poly(0, 1), _single_mode("x"))
    assert [str(bf) for bf in basis] == ["x^2", "x", "1"]
    assert vector == (F(1, 2), 0, 0)


def test_mode_solve_nonresonant_exponential():
    basis, vector = solve_mode_multiplicity(
        _poly(-4, 3, 1), _single_mode("2*x*e^(2x) - 3*e^(2x)")
    )
    assert [str(bf) for bf in basis] == ["x*e^(2x)", "e^(2x)"]
    assert vector == (F(1, 3), F(-8, 9))


def test_mode_solve_resonant_exponential_trig():
    basis, vector = solve_mode_multiplicity(
        _poly(13, -4, 1), _single_mode("2*x*e^(2x)*cos(3x)")
    )
    assert len(basis) == 6
    assert vector == (F(1, 6), 0, 0, F(1, 18), 0, 0)


def test_mode_solve_quadruple_root():
    operator = _poly(64, -32, -12, 4, 1)  # (k-2)^2 (k+4)^2
    basis, vector = solve_mode_multiplicity(operator, _single_mode("3*e^(2x)"))
    assert [str(bf) for bf in basis] == ["x^2*e^(2x)", "x*e^(2x)", "e^(2x)"]
    assert vector == (F(1, 24), 0, 0)


# ---------------------------------------------------------------------------
# adaptive escalation


def test_adaptive_escalates_to_double_resonance():
    operator = _poly(1, 0, 2, 0, 1)  # (k^2+1)^2
    basis, vector = solve_mode_adaptive(operator, _single_mode("2*sin(1x) - 4*cos(1x)"))
    assert len(basis) == 6
    assert basis.functions[0].power == 2
    assert vector == (F(-1, 4), F(1, 2), 0, 0, 0, 0)


def test_adaptive_matches_multiplicity_on_nonresonant_mode():
    operator = _poly(-4, 3, 1)
    mode = _single_mode("x*e^(2x)")
    assert solve_mode_adaptive(operator, mode) == solve_mode_multiplicity(
        operator, mode
    )


def test_adaptive_escalation_limit_is_an_internal_error():
    operator = _poly(1, 0, 2, 0, 1)
    with pytest.raises(AssertionError):
        solve_mode_adaptive(operator, _single_mode("sin(1x)"), max_escalations=1)


# ---------------------------------------------------------------------------
# Maclaurin series of the reciprocal operator


def test_maclaurin_coefficients_cubic():
    operator = _poly(1, 2, -1, 1)
    assert maclaurin_coefficients(operator, 5) == (1, -2, 5, -13, 33)


def test_maclaurin_coefficients_constant_operator():
    assert maclaurin_coefficients(_poly(4), 4) == (F(1, 4), 0, 0, 0)


def test_maclaurin_coefficients_geometric():
    assert maclaurin_coefficients(_poly(1, 1), 6) == (1, -1, 1, -1, 1, -1)


def test_maclaurin_coefficients_zero_constant_term_rejected():
    with pytest.raises(ValueError):
        maclaurin_coefficients(_poly(0, 1), 3)


def test_maclaurin_coefficients_zero_operator_rejected():
    with pytest.raises(ZeroOperatorError):
        maclaurin_coefficients(RatPoly([]), 3)


def test_maclaurin_series_is_reciprocal():
    rng = Random(211)
    for _ in range(25):
        degree = rng.randint(0, 4)
        coeffs = [F(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(degree + 1)]
        coeffs[0] = coeffs[0] if coeffs[0] != 0 else F(1)
        if degree > 0 and coeffs[-1] == 0:
            coeffs[-1] = F(1)
        operator = RatPoly(coeffs)
        count = 8
        series = maclaurin_coefficients(operator, count)
        # convolution of the series with the operator gives 1, 0, 0, ...
        for n in range(count):
            acc = sum(
                operator.coefficient(j) * series[n - j]
                for j in range(min(n, operator.degree) + 1)
            )
            assert acc == (1 if n == 0 else 0)


# ---------------------------------------------------------------------------
# polynomial right-hand sides via the series


def test_poly_maclaurin_cubic_rhs():
    y = solve_poly_maclaurin(_poly(1, 2, -1, 1), parse_forcing("x^3 + 2*x^2 + 3*x"))
    assert y == parse_forcing("x^3 - 4*x^2 + 25*x - 64")


def test_poly_maclaurin_pure_derivative_operator():
    assert solve_poly_maclaurin(_poly(0, 1), parse_forcing("x")) == parse_forcing(
        "1/2*x^2"
    )


def test_poly_maclaurin_shift_path():
    assert solve_poly_maclaurin(_poly(0, 1, 1), parse_forcing("x")) == parse_forcing(
        "1/2*x^2 - x"
    )


def test_poly_maclaurin_rejects_non_polynomial():
    with pytest.raises(NonPolynomialError):
        solve_poly_maclaurin(_poly(1, 1), parse_forcing("e^(1x)"))


def test_poly_maclaurin_zero_rhs():
    assert solve_poly_maclaurin(_poly(1, 1), ForcingFunction.zero()).is_zero


# ---------------------------------------------------------------------------
# substitute-back verification


def test_verify_accepts_true_solution():
    residual = verify_particular(
        _poly(1, 0, 1),
        parse_forcing("1/4*x^2*sin(1x) + 1/4*x*cos(1x)"),
        parse_forcing("x*cos(1x)"),
    )
    assert residual.is_zero


def test_verify_reports_exact_residual_of_wrong_candidate():
    residual = verify_particular(
        _poly(-4, 3, 1),
        parse_forcing("1/6*x*e^(2x) + 5/24*e^(2x)"),
        parse_forcing("x*e^(2x)"),
    )
    assert residual == parse_forcing("29/12*e^(2x)")


def test_verify_zero_against_zero():
    assert verify_particular(_poly(3, 1), ForcingFunction.zero(), ForcingFunction.zero()).is_zero
    assert verify_particular(_poly(0, 1), parse_forcing("1/2*x^2"), parse_forcing("x")).is_zero


# ---------------------------------------------------------------------------
# full solves


def test_particular_solution_quadruple_root():
    solution = particular_solution(
        _poly(64, -32, -12, 4, 1), parse_forcing("3*e^(2x)")
    )
    assert solution.expression == parse_forcing("1/24*x^2*e^(2x)")
    assert solution.residual.is_zero
    assert solution.method is Method.MATRIX_MULTIPLICITY
    assert len(solution.per_mode) == 1
    assert solution.work_log is not None and len(solution.work_log) == 1
    assert solution.work_log[0].path == "shell-pseudoinverse"


def test_particular_solution_mixed_modes():
    operator = _poly(-4, 3, 1)
    rhs = parse_forcing("x*e^(2x) + sin(1x)")
    solution = particular_solution(operator, rhs)
    assert len(solution.per_mode) == 2
    assert verify_particular(operator, solution.expression, rhs).is_zero


def test_particular_solution_superposition_over_disjoint_modes():
    operator = _poly(-4, 3, 1)
    f = parse_forcing("x*e^(1x)")
    g = parse_forcing("sin(2x)")
    combined = particular_solution(operator, add(f, g)).expression
    separate = add(
        particular_solution(operator, f).expression,
        particular_solution(operator, g).expression,
    )
    assert combined == separate


def test_particular_solution_maclaurin_method():
    solution = particular_solution(
        _poly(1, 2, -1, 1),
        parse_forcing("x^3 + 2*x^2 + 3*x"),
        method=Method.MACLAURIN,
    )
    assert solution.expression == parse_forcing("x^3 - 4*x^2 + 25*x - 64")
    assert solution.per_mode == ()
    assert solution.work_log is None
    assert solution.method is Method.MACLAURIN


def test_particular_solution_maclaurin_rejects_trig():
    with pytest.raises(NonPolynomialError):
        particular_solution(_poly(1, 1), parse_forcing("cos(1x)"), method=Method.MACLAURIN)


def test_particular_solution_zero_operator():
    with pytest.raises(ZeroOperatorError):
        particular_solution(RatPoly([]), parse_forcing("x"))


def test_particular_solution_zero_rhs():
    solution = particular_solution(_poly(1, 1), ForcingFunction.zero())
    assert solution.expression.is_zero


def test_particular_solution_without_verify_still_solves():
    operator = _poly(-4, 3, 1)
    rhs = parse_forcing("x*e^(2x)")
    checked = particular_solution(operator, rhs)
    unchecked = particular_solution(operator, rhs, verify=False)
    assert unchecked.expression == checked.expression
    assert unchecked.residual.is_zero


# ---------------------------------------------------------------------------
# randomized cross-validation of the three methods


def test_methods_agree_on_random_instances():
    rng = Random(227)
    for _ in range(40):
        operator, rhs = rand_instance(rng)
        first = particular_solution(operator, rhs, Method.MATRIX_MULTIPLICITY)
        assert verify_particular(operator, first.expression, rhs).is_zero
        second = particular_solution(operator, rhs, Method.MATRIX_ADAPTIVE)
        assert first.per_mode == second.per_mode
        assert first.expression == second.expression
        if is_polynomial(rhs) and operator.coefficient(0) != 0:
            third = particular_solution(operator, rhs, Method.MACLAURIN)
            assert third.expression == first.expression


def test_resonant_modes_use_pseudoinverse_paths():
    rng = Random(229)
    seen_pseudo = 0
    for _ in range(40):
        operator, rhs = rand_instance(rng)
        solution = particular_solution(operator, rhs)
        for work in solution.work_log:
            if work.multiplicity > 0:
                assert work.path in (
                    "shell-pseudoinverse",
                    "general-pseudoinverse",
                )
                seen_pseudo += 1
            else:
                assert work.path == "inverse"
    assert seen_pseudo > 0


# ---------------------------------------------------------------------------
# antiderivatives


def test_integrate_exponential_trig_combination():
    y = integrate(
        parse_forcing(
            "13*x*e^(2x)*sin(3x) - 13*x*e^(2x)*cos(3x) + 5*e^(2x)*sin(3x) - 4*e^(2x)*cos(3x)"
        )
    )
    assert y == parse_forcing(
        "-x*e^(2x)*sin(3x) - 5*x*e^(2x)*cos(3x) + 15/13*e^(2x)*sin(3x) - 16/13*e^(2x)*cos(3x)"
    )


def test_integrate_zero():
    assert integrate(ForcingFunction.zero()).is_zero


def test_integrate_cosine():
    assert integrate(parse_forcing("cos(1x)")) == parse_forcing("sin(1x)")


def test_integrate_then_differentiate_roundtrip():
    rng = Random(233)
    for _ in range(25):
        _, rhs = rand_instance(rng)
        assert differentiate(integrate(rhs)) == rhs


# ---------------------------------------------------------------------------
# hypothesis: the series really is the reciprocal power series


@given(
    st.lists(
        st.fractions(min_value=-3, max_value=3, max_denominator=2),
        min_size=1,
        max_size=5,
    ).filter(lambda c: c[0] != 0 and c[-1] != 0)
)
def test_maclaurin_reciprocal_property(coeffs):
    operator = RatPoly(coeffs)
    series = maclaurin_coefficients(operator, 6)
    for n in range(6):
        acc = sum(
            operator.coefficient(j) * series[n - j]
            for j in range(min(n, operator.degree) + 1)
        )
        assert acc == (1 if n == 0 else 0)
