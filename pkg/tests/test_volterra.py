import math

import numpy as np
import pytest
from scipy.integrate import quad

from opseq import DegreeOverflowError, beta_operators, solve_iterative
from opseq.applications import (
    PolyFunction,
    VolterraOperator,
    cauchy_kernel,
    solve_volterra_problem,
    volterra_beta_operator,
    volterra_power,
    volterra_problem,
)

one = PolyFunction.constant(1)


def test_poly_basics():
    f = PolyFunction([1, 2, 3])
    assert f.degree == 2
    assert f(2.0) == pytest.approx(17)
    assert f.derivative() == PolyFunction([2, 6])
    assert f.antiderivative() == PolyFunction([0, 1, 1, 1])
    assert PolyFunction([1, 0, 0]) == one
    assert PolyFunction().degree <= 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_iterated_integral_of_one(n):
    expected = PolyFunction.monomial(n, 1 / math.factorial(n))
    assert volterra_power(n, one) == expected
    assert cauchy_kernel(n, one).max_abs_diff(expected) == 0


def test_t_cubed_over_six_rendering():
    assert volterra_power(3, one).coef[3] == 1 / 6
    assert cauchy_kernel(3, one).coef[3] == 1 / 6


def test_n4_of_t_squared():
    expected = PolyFunction.monomial(6, 1 / 360)
    t2 = PolyFunction.monomial(2)
    assert volterra_power(4, t2).max_abs_diff(expected) <= 1e-16
    assert cauchy_kernel(4, t2).max_abs_diff(expected) <= 1e-16


@pytest.mark.parametrize("n", range(1, 9))
def test_power_equals_kernel(n):
    for j in range(7):
        f = PolyFunction.monomial(j)
        assert volterra_power(n, f).max_abs_diff(cauchy_kernel(n, f)) <= 1e-13


@pytest.mark.parametrize("n,j", [(1, 0), (2, 3), (4, 1), (6, 5)])
def test_kernel_against_quadrature(n, j):
    t = 0.8
    integrand = lambda s: (t - s) ** (n - 1) * s**j / math.factorial(n - 1)
    ref, _ = quad(integrand, 0, t, epsabs=1e-15, epsrel=1e-13)
    got = cauchy_kernel(n, PolyFunction.monomial(j))(t)
    assert got.real == pytest.approx(ref, rel=1e-11)


def test_degree_cap():
    f = PolyFunction.monomial(10, cap=12)
    with pytest.raises(DegreeOverflowError):
        volterra_power(3, f)
    with pytest.raises(DegreeOverflowError):
        cauchy_kernel(3, f)


def test_operator_composition():
    v = VolterraOperator.power(1)
    assert v @ v == VolterraOperator.power(2)
    f = PolyFunction([1, 1])
    assert ((v @ v) @ f).max_abs_diff(volterra_power(2, f)) == 0


@pytest.mark.parametrize("a,b", [(0.5, 1.2), (-1.0, 0.3), (2.0, -0.7)])
def test_beta_operator_formula(a, b):
    L0, L1 = VolterraOperator.power(1, a), VolterraOperator.power(1, b)
    general = beta_operators(L0, L1, 12)
    tests = [PolyFunction.monomial(j) for j in range(4)]
    for p in range(13):
        for f in tests:
            diff = (volterra_beta_operator(p, a, b) @ f).max_abs_diff(general[p] @ f)
            assert diff <= 1e-11


def test_alpha0_beta1_repeated_integration():
    P = 10
    sol = solve_volterra_problem(0, 1, PolyFunction(), one, [0] * (P - 1), P)
    for p in range(1, P + 1):
        expected = PolyFunction.monomial(p - 1, 1 / math.factorial(p - 1))
        for path in (sol.iterative, sol.resolutive, sol.explicit):
            assert path[p].max_abs_diff(expected) <= 1e-15


def test_zero_coefficients_give_boundary_constants():
    bnd = [1.5, -2, 0.25, 3]
    sol = solve_volterra_problem(0, 0, PolyFunction([1, 2]), PolyFunction([0, 1]), bnd, 5)
    for p in range(2, 6):
        assert sol.iterative[p] == PolyFunction.constant(bnd[p - 2])


def test_particular_solution():
    a, b, P = 0.7, -1.3, 8
    bnd = [0.5, -1, 2, 0.25, 1, -0.5, 3]
    sol = solve_volterra_problem(a, b, PolyFunction(), PolyFunction(), bnd, P)
    prob = volterra_problem(a, b, PolyFunction(), PolyFunction(), bnd, P)
    betas = beta_operators(prob.L0, prob.L1, P)
    for p in range(2, P + 1):
        expected = PolyFunction.constant(bnd[p - 2])
        for m in range(1, p - 1):
            expected = expected + betas[p - m] @ PolyFunction.constant(bnd[m - 1])
        assert sol.iterative[p].max_abs_diff(expected) <= 1e-12


def test_full_problem_three_paths():
    f0, f1 = PolyFunction([1, -0.5, 0.25]), PolyFunction([0.3, 1])
    bnd = [0.1 * k - 0.4 for k in range(11)]
    sol = solve_volterra_problem(0.8, -0.6, f0, f1, bnd, 12)
    assert sol.max_deviation() <= 1e-10
    assert max(sol.derivative_residuals) <= 1e-11
    assert max(sol.boundary_errors) <= 1e-12


def test_iterative_matches_problem_solver():
    prob = volterra_problem(1, 1, one, one, [1] * 5, 6)
    sol = solve_volterra_problem(1, 1, one, one, [1] * 5, 6)
    for a, b in zip(solve_iterative(prob).values, sol.iterative):
        assert a.max_abs_diff(b) == 0


def test_boundary_length_checked():
    with pytest.raises(ValueError):
        volterra_problem(1, 1, one, one, [0, 0], 5)


def test_degree_overflow_for_large_p():
    with pytest.raises(DegreeOverflowError):
        solve_volterra_problem(1, 1, PolyFunction.monomial(3, cap=8), one, [0] * 9, 10)
