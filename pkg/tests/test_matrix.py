import numpy as np
import pytest
from scipy.special import eval_chebyu

from opseq import (
    DimensionError,
    SingularOperatorError,
    SquareRootUnavailableError,
    as_matrix,
    chebyshev_U,
    eigen,
    identity,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sqrt,
)

rng = np.random.default_rng(2024)


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def random_unit_disc(n, gen=None):
    gen = gen or rng
    r = np.sqrt(gen.uniform(size=(n, n)))
    return r * np.exp(2j * np.pi * gen.uniform(size=(n, n)))


def test_ring_basics():
    eye = identity(3)
    np.testing.assert_array_equal(mat_pow(eye, 7), eye)
    np.testing.assert_allclose(mat_inverse(2 * eye), 0.5 * eye)
    m0 = as_matrix([[0, 1], [0, 0]])
    m1 = as_matrix([[0, 0], [1, 0]])
    np.testing.assert_array_equal(mat_mul(m0, m1), [[1, 0], [0, 0]])
    np.testing.assert_array_equal(mat_add(m0, m1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(mat_scale(2j, m0), [[0, 2j], [0, 0]])


def test_mat_pow_matches_repeated_product():
    m = random_unit_disc(4)
    expected = identity(4)
    for k in range(9):
        np.testing.assert_allclose(mat_pow(m, k), expected, atol=1e-13)
        expected = expected @ m
    np.testing.assert_array_equal(mat_pow(m, 0), identity(4))


def test_dimension_checks():
    with pytest.raises(DimensionError):
        mat_mul(identity(2), identity(3))
    with pytest.raises(DimensionError):
        as_matrix([[1, 2, 3]])
    with pytest.raises(ValueError):
        mat_pow(identity(2), -1)


def test_inverse_singular():
    with pytest.raises(SingularOperatorError):
        mat_inverse([[1, 2], [2, 4]])
    with pytest.raises(SingularOperatorError):
        mat_inverse(np.zeros((2, 2)))


def test_inverse_random():
    m = random_unit_disc(5) + 2 * identity(5)
    np.testing.assert_allclose(mat_inverse(m) @ m, identity(5), atol=1e-12)


def test_sqrt_examples():
    np.testing.assert_allclose(mat_sqrt(identity(3)), identity(3), atol=1e-15)
    np.testing.assert_allclose(mat_sqrt(4 * identity(2)), 2 * identity(2), atol=1e-15)
    np.testing.assert_allclose(mat_sqrt(np.diag([-1.0, 9.0])), np.diag([1j, 3]), atol=1e-15)


def test_sqrt_principal_branch_negative_zero_imag():
    s = mat_sqrt(np.diag([complex(-4, -0.0)]))
    assert s[0, 0] == pytest.approx(2j)


@pytest.mark.parametrize("seed", range(10))
def test_sqrt_reconstructs_diagonalizable(seed):
    r = np.random.default_rng(seed)
    n = 4
    while True:
        v = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
        if np.linalg.cond(v) <= 1e4:
            break
    lam = r.normal(size=n) + 1j * r.normal(size=n)
    m = v @ np.diag(lam) @ np.linalg.inv(v)
    s = mat_sqrt(m)
    assert rel(s @ s, m) <= 1e-8
    # principal branch: every eigenvalue of the root has nonnegative real part
    assert np.all(eigen(s).eigenvalues.real >= -1e-12)


def test_sqrt_rejects_singular_and_defective():
    with pytest.raises(SquareRootUnavailableError):
        mat_sqrt(np.diag([0.0, 1.0]))
    with pytest.raises(SquareRootUnavailableError):
        mat_sqrt([[1.0, 1.0], [0.0, 1.0]])


def test_eigen_residual():
    m = random_unit_disc(4)
    spec = eigen(m)
    np.testing.assert_allclose(m @ spec.eigenvectors, spec.eigenvectors * spec.eigenvalues, atol=1e-12)


def test_chebyshev_low_degrees():
    x = random_unit_disc(3)
    eye = identity(3)
    np.testing.assert_array_equal(chebyshev_U(0, x), eye)
    np.testing.assert_allclose(chebyshev_U(1, x), 2 * x, atol=1e-15)
    np.testing.assert_allclose(chebyshev_U(2, x), 4 * x @ x - eye, atol=1e-14)


def test_chebyshev_scalar_against_scipy_and_trig():
    for p in range(12):
        for x in (-0.9, -0.3, 0.0, 0.25, 0.8, 1.7):
            assert chebyshev_U(p, x) == pytest.approx(eval_chebyu(p, x), rel=1e-12, abs=1e-12)
        theta = 0.7
        assert chebyshev_U(p, np.cos(theta)) == pytest.approx(
            np.sin((p + 1) * theta) / np.sin(theta), abs=1e-12
        )
    assert chebyshev_U(2, 0.5) == 0.0


def u_recurrence(p, z):
    """Oracle: scalar three-term recurrence, independent of the explicit sum."""
    prev, cur = 0, 1
    for _ in range(p):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def test_chebyshev_matches_scalar_on_diagonal():
    d = np.array([0.3, -0.8, 0.5 + 0.2j])
    for p in range(10):
        np.testing.assert_allclose(
            np.diag(chebyshev_U(p, np.diag(d))), [u_recurrence(p, z) for z in d], rtol=1e-12, atol=1e-12
        )


@pytest.mark.parametrize("seed", range(5))
def test_chebyshev_three_term_recurrence(seed):
    x = random_unit_disc(3, np.random.default_rng(seed))
    for p in range(1, 15):
        lhs = chebyshev_U(p + 1, x)
        rhs = 2 * x @ chebyshev_U(p, x) - chebyshev_U(p - 1, x)
        assert rel(lhs, rhs) <= 1e-9


def test_mat_mul_associative():
    for _ in range(20):
        a, b, c = (random_unit_disc(4) for _ in range(3))
        assert rel(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c))) <= 1e-12
