from dataclasses import replace

import numpy as np
import pytest

from opseq import (
    DimensionError,
    NotCommutingError,
    Problem,
    SquareRootUnavailableError,
    alpha_operators,
    beta_expansion,
    beta_operators,
    chebyshev_U,
    evaluate_word_sum,
    relative_deviation,
    solve_closed_form,
    solve_commuting_chebyshev,
    solve_iterative,
    solve_words_oracle,
)


def cplx(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_problem(rng, n=3, P=12, forced=True):
    forcing = [cplx(rng, n) for _ in range(P - 1)] if forced else []
    return Problem(cplx(rng, n, n) / n, cplx(rng, n, n) / n, cplx(rng, n), cplx(rng, n), P, forcing)


def scalar(x):
    return np.array([[x]], dtype=complex)


def test_zero_problem_gives_zero_sequence():
    n = 2
    prob = Problem(np.eye(n), np.eye(n), np.zeros(n), np.zeros(n), 8, [np.zeros(n)] * 7)
    for seq in (solve_iterative(prob), solve_closed_form(prob)):
        assert all(np.all(y == 0) for y in seq.values)


def test_fibonacci():
    prob = Problem(scalar(1), scalar(1), np.array([0j]), np.array([1 + 0j]), 12)
    fib = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]
    for solve in (solve_iterative, solve_closed_form, solve_words_oracle):
        assert [y[0].real for y in solve(prob).values] == fib


def test_short_horizons_return_initial_data():
    A, B = np.array([1.0 + 0j, 2.0]), np.array([3.0 + 0j, 4.0])
    prob = Problem(np.eye(2), np.eye(2), A, B, 1)
    seq = solve_iterative(prob)
    assert len(seq) == 2
    np.testing.assert_array_equal(seq[0], A)
    np.testing.assert_array_equal(seq[1], B)
    assert seq[0] is not A
    assert len(solve_closed_form(replace(prob, P=0))) == 1


def test_problem_validation():
    eye = np.eye(2)
    v = np.zeros(2)
    with pytest.raises(ValueError):
        Problem(eye, eye, v, v, 5, [v, v])
    with pytest.raises(DimensionError):
        Problem(eye, np.eye(3), v, v, 5)
    with pytest.raises(DimensionError):
        Problem(eye, eye, v, np.zeros(3), 5)


def test_beta_operator_values():
    rng = np.random.default_rng(1)
    L0, L1 = cplx(rng, 3, 3), cplx(rng, 3, 3)
    betas = beta_operators(L0, L1, 6)
    np.testing.assert_array_equal(betas[0], np.zeros((3, 3)))
    np.testing.assert_array_equal(betas[1], np.eye(3))
    np.testing.assert_array_equal(betas[2], L1)
    np.testing.assert_allclose(betas[3], L0 + L1 @ L1, atol=1e-14)
    alphas = alpha_operators(L0, L1, 6)
    np.testing.assert_array_equal(alphas[0], np.eye(3))
    np.testing.assert_array_equal(alphas[1], np.zeros((3, 3)))
    np.testing.assert_allclose(alphas[2], L0, atol=1e-15)
    np.testing.assert_allclose(alphas[3], L1 @ L0, atol=1e-14)


@pytest.mark.parametrize("p", range(0, 11))
def test_beta_operators_agree_with_words(p):
    rng = np.random.default_rng(p)
    L0, L1 = cplx(rng, 3, 3) / 2, cplx(rng, 3, 3) / 2
    x = cplx(rng, 3)
    beta = beta_operators(L0, L1, p)[p]
    np.testing.assert_allclose(beta @ x, evaluate_word_sum(beta_expansion(p), (L0, L1), x), atol=1e-12)


def test_homogeneous_with_zero_start_is_beta_times_b():
    rng = np.random.default_rng(5)
    prob = replace(random_problem(rng, forced=False), A=np.zeros(3, complex))
    betas = beta_operators(prob.L0, prob.L1, prob.P)
    for p, y in enumerate(solve_closed_form(prob).values):
        np.testing.assert_allclose(y, betas[p] @ prob.B, atol=1e-14)


def test_first_forced_values():
    rng = np.random.default_rng(9)
    prob = random_problem(rng, P=5)
    prob = replace(prob, A=np.zeros(3, complex), B=np.zeros(3, complex))
    phi1, phi2 = prob.forcing[:2]
    for seq in (solve_iterative(prob), solve_closed_form(prob)):
        np.testing.assert_allclose(seq[2], phi1, atol=1e-15)
        np.testing.assert_allclose(seq[3], prob.L1 @ phi1 + phi2, atol=1e-14)


@pytest.mark.parametrize("seed", range(10))
def test_three_paths_agree(seed):
    rng = np.random.default_rng(seed)
    prob = random_problem(rng, n=1 + seed % 4)
    it, cf, wo = solve_iterative(prob), solve_closed_form(prob), solve_words_oracle(prob)
    assert relative_deviation(it, cf) <= 1e-9
    assert relative_deviation(it, wo) <= 1e-9
    assert relative_deviation(cf, wo) <= 1e-9


def test_matrix_valued_sequences():
    # vectors may themselves be matrices (the matrix-algebra reading)
    rng = np.random.default_rng(11)
    prob = Problem(cplx(rng, 2, 2), cplx(rng, 2, 2), cplx(rng, 2, 2), cplx(rng, 2, 2), 7,
                   [cplx(rng, 2, 2) for _ in range(6)])
    assert relative_deviation(solve_iterative(prob), solve_closed_form(prob)) <= 1e-12


def test_superposition():
    rng = np.random.default_rng(21)
    p1 = random_problem(rng)
    p2 = replace(p1, A=cplx(rng, 3), B=cplx(rng, 3), forcing=[cplx(rng, 3) for _ in range(11)])
    both = replace(p1, A=p1.A + p2.A, B=p1.B + p2.B,
                   forcing=[a + b for a, b in zip(p1.forcing, p2.forcing)])
    s1, s2, s12 = (solve_closed_form(p).values for p in (p1, p2, both))
    total = solve_iterative(both)
    summed = type(total)(tuple(a + b for a, b in zip(s1, s2)), "sum")
    assert relative_deviation(summed, type(total)(s12, "x")) <= 1e-10
    assert relative_deviation(summed, total) <= 1e-10


def test_homogeneous_particular_split():
    rng = np.random.default_rng(22)
    prob = random_problem(rng)
    zeros = np.zeros(3, complex)
    full = solve_iterative(prob).values
    particular = solve_closed_form(replace(prob, A=zeros, B=zeros)).values
    homog = solve_closed_form(replace(prob, forcing=[])).values
    diff = tuple(f - q for f, q in zip(full, particular))
    dev = relative_deviation(type(solve_iterative(prob))(diff, "d"), type(solve_iterative(prob))(homog, "h"))
    assert dev <= 1e-10
    # the difference satisfies the unforced recurrence
    for p in range(prob.P - 1):
        np.testing.assert_allclose(diff[p + 2], prob.L0 @ diff[p] + prob.L1 @ diff[p + 1], atol=1e-10)


# -- commuting / Chebyshev ---------------------------------------------------


@pytest.mark.parametrize("x", [0.0, 0.3, -0.7, 1.4])
def test_chebyshev_scalar_multiple_of_identity(x):
    n = 2
    L0, L1 = -np.eye(n, dtype=complex), 2 * x * np.eye(n, dtype=complex)
    betas = beta_operators(L0, L1, 10)
    for p in range(1, 11):
        np.testing.assert_allclose(betas[p], chebyshev_U(p - 1, x) * np.eye(n), atol=1e-10)
    prob = Problem(L0, L1, np.array([1.0 + 0j, 2.0]), np.array([0.5 + 0j, -1.0]), 10)
    assert relative_deviation(solve_commuting_chebyshev(prob), solve_closed_form(prob)) <= 1e-12


def test_chebyshev_period_four():
    e1 = np.array([1.0 + 0j, 0.0])
    prob = Problem(-np.eye(2, dtype=complex), np.zeros((2, 2), complex), np.zeros(2, complex), e1, 9)
    seq = solve_commuting_chebyshev(prob)
    assert [round(y[0].real, 12) for y in seq.values] == [0, 1, 0, -1, 0, 1, 0, -1, 0, 1]


def commuting_pair(rng, n=3):
    r = cplx(rng, n, n) / np.sqrt(n)
    eye = np.eye(n)
    L0 = -(eye + 0.3 * r + 0.1 * r @ r)
    L1 = 0.5 * r - 0.2 * r @ r + 0.4 * eye
    return L0, L1


@pytest.mark.parametrize("seed", range(5))
def test_chebyshev_matches_general_path_on_commuting_pairs(seed):
    rng = np.random.default_rng(100 + seed)
    L0, L1 = commuting_pair(rng)
    prob = Problem(L0, L1, cplx(rng, 3), cplx(rng, 3), 10, [cplx(rng, 3) for _ in range(9)])
    assert relative_deviation(solve_commuting_chebyshev(prob), solve_closed_form(prob)) <= 1e-7


def test_chebyshev_rejects_noncommuting():
    rng = np.random.default_rng(3)
    prob = random_problem(rng)
    with pytest.raises(NotCommutingError) as info:
        solve_commuting_chebyshev(prob)
    assert info.value.commutator_norm > 0


def test_chebyshev_rejects_singular_l0():
    L0 = np.zeros((2, 2), complex)
    prob = Problem(L0, np.eye(2, dtype=complex), np.ones(2, complex), np.ones(2, complex), 5)
    with pytest.raises(SquareRootUnavailableError):
        solve_commuting_chebyshev(prob)
