from fractions import Fraction

import numpy as np
import pytest

from opseq.applications import (
    BASE_FUNCTIONS,
    ShiftExpansion,
    ShiftOperator,
    binomial_shift_value,
    exp_pair_value,
    recurrence_callables,
    shift_operators,
    solve_shift_problem,
)

T = np.array([0.0, 0.5, 1.0])
exp, exp_neg = BASE_FUNCTIONS["exp"], BASE_FUNCTIONS["exp_neg"]


def test_operator_algebra():
    a, b = ShiftOperator.translation(0.5), ShiftOperator.translation(-0.25, 2)
    assert a @ b == ShiftOperator({Fraction(1, 4): 2})
    assert (a + a) == a * 2
    assert (a - a).terms == {}
    L0, L1 = shift_operators(0.2, 0.3)
    assert L0 @ L1 == L1 @ L0
    f = ShiftExpansion.base("f0")
    assert (L1 @ f).terms == {("f0", Fraction(0.3)): 1}


def test_expansion_evaluates_translations():
    f = ShiftExpansion({("f1", Fraction(1, 2)): 3, ("f0", Fraction(-1)): -1})
    got = f.evaluate({"f0": np.sin, "f1": np.cos}, T)
    np.testing.assert_allclose(got, 3 * np.cos(T + 0.5) - np.sin(T - 1), atol=1e-15)


def test_p2_is_one_step():
    sol = solve_shift_problem(np.sin, np.cos, 0.2, 0.3, 2, T)
    np.testing.assert_allclose(sol.resolutive[2], -np.sin(T - 0.2) + np.cos(T + 0.3), atol=1e-15)
    assert len(sol.expansions[2]) == 2


def test_zero_offsets_give_period_six():
    sol = solve_shift_problem(exp_neg, exp, 0.0, 0.0, 12, T)
    for tab in sol.tables().values():
        np.testing.assert_allclose(tab[6:12], tab[0:6], atol=1e-12)
    y = [1.0, 2.0]
    for _ in range(5):
        y.append(y[-1] - y[-2])
    sol = solve_shift_problem(BASE_FUNCTIONS["one"], lambda t: 2 * np.ones_like(t), 0, 0, 6, [0.3])
    np.testing.assert_allclose(sol.recurrence[:, 0], y, atol=1e-15)


@pytest.mark.parametrize("name0,name1", [("exp_neg", "exp"), ("sin", "gauss"), ("t", "cos")])
def test_binomial_matches_callable_recurrence(name0, name1):
    f0, f1 = BASE_FUNCTIONS[name0], BASE_FUNCTIONS[name1]
    fs = recurrence_callables(f0, f1, 0.2, 0.3, 10)
    for p, fp in enumerate(fs):
        np.testing.assert_allclose(binomial_shift_value(f0, f1, 0.2, 0.3, p, T), fp(T), atol=1e-10)


def test_exp_pair_closed_form():
    fs = recurrence_callables(exp_neg, exp, 0.2, 0.3, 8)
    for p, fp in enumerate(fs):
        np.testing.assert_allclose(exp_pair_value(p, T, 0.2, 0.3), fp(T), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("taus", [(0.2, 0.3), (0.5, -0.1), (1.0, 1.0)])
def test_all_paths_agree(taus):
    sol = solve_shift_problem(np.sin, np.cos, *taus, 10, np.linspace(-1, 1, 5))
    assert sol.chebyshev is not None
    assert sol.max_deviation() <= 1e-9


def test_expansion_sizes_are_small():
    # translations commute, so the Fibonacci-many words collapse to O(p) distinct offsets
    sol = solve_shift_problem(exp_neg, exp, 0.2, 0.3, 12, T, chebyshev=False)
    assert all(len(e) <= p + 1 for p, e in enumerate(sol.expansions))
    assert sol.chebyshev is None


def test_rejects_short_horizon():
    with pytest.raises(ValueError):
        solve_shift_problem(exp_neg, exp, 0.2, 0.3, 1, T)
