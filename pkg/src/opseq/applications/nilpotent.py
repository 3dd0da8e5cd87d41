"""
Closed forms for coefficients that square to zero.

When ``M0 @ M0 = M1 @ M1 = 0`` every word containing a repeated letter
vanishes, so each symmetrized symbol collapses to at most two alternating
products and ``alpha_p``/``beta_p`` depend only on ``p mod 3``.
"""

from __future__ import annotations

import numpy as np

from ..errors import NotNilpotentError
from ..matrix import as_matrix, identity, mat_pow
from ..solver import Problem, SolutionSequence

NILPOTENT_ATOL = 1e-12


def check_index2(*ms, atol: float = NILPOTENT_ATOL):
    for i, m in enumerate(ms):
        sq = np.max(np.abs(m @ m))
        if sq > atol:
            raise NotNilpotentError(f"matrix #{i} is not nilpotent of index 2: |M^2| = {sq:.3e}")


def random_index2_pair(n: int, rng: np.random.Generator):
    """Two rank-one complex matrices ``u v^T`` with ``v^T u = 0`` and unit factors."""
    if n < 2:
        raise ValueError("need n >= 2 for a nonzero index-2 nilpotent")

    def one():
        u = rng.normal(size=n) + 1j * rng.normal(size=n)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v = v - (v @ u) / (u @ u) * u  # bilinear, not Hermitian, projection
        return np.outer(u / np.linalg.norm(u), v / np.linalg.norm(v))

    return one(), one()


def nilpotent_beta(p: int, M0, M1) -> np.ndarray:
    """``beta_p`` for index-2 nilpotent coefficients.

    ======== ===============================
    p        beta_p
    ======== ===============================
    3k+1     (M0 M1)^k + (M1 M0)^k, k >= 1
    3k+2     M1 (M0 M1)^k
    3k       (M0 M1)^(k-1) M0
    ======== ===============================

    ``p = 0`` and ``p = 1`` return the boundary values ``0`` and ``E``; the
    ``3k+1`` row would give ``2E`` at ``k = 0``.
    """
    M0, M1 = as_matrix(M0), as_matrix(M1)
    check_index2(M0, M1)
    n = M0.shape[0]
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        return np.zeros((n, n), complex)
    if p == 1:
        return identity(n)
    k, rem = divmod(p, 3)
    m01 = M0 @ M1
    if rem == 1:
        return mat_pow(m01, k) + mat_pow(M1 @ M0, k)
    if rem == 2:
        return M1 @ mat_pow(m01, k)
    return mat_pow(m01, k - 1) @ M0


def nilpotent_alpha(p: int, M0, M1) -> np.ndarray:
    """``alpha_p`` for index-2 nilpotent coefficients.

    ``(M0 M1)^k M0`` at ``p = 3k+2``, ``M1 (M0 M1)^k M0`` at ``p = 3k+3`` and
    exactly zero at ``p = 3k+1``.
    """
    M0, M1 = as_matrix(M0), as_matrix(M1)
    check_index2(M0, M1)
    n = M0.shape[0]
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        return identity(n)
    k, rem = divmod(p - 2, 3)
    if p == 1 or rem == 2:
        return np.zeros((n, n), complex)
    if rem == 0:
        return mat_pow(M0 @ M1, k) @ M0
    return M1 @ mat_pow(M0 @ M1, k) @ M0


def solve_nilpotent(prob: Problem) -> SolutionSequence:
    """Resolutive formula with the piecewise closed forms above."""
    M0, M1 = prob.L0, prob.L1
    betas = [nilpotent_beta(p, M0, M1) for p in range(prob.P + 1)]
    ys = [prob.A.copy(), prob.B.copy()][: prob.P + 1]
    for p in range(2, prob.P + 1):
        y = nilpotent_alpha(p, M0, M1) @ prob.A + betas[p] @ prob.B
        for r in range(1, p):
            y = y + betas[p - r] @ prob.phi(r)
        ys.append(y)
    return SolutionSequence(tuple(ys), "nilpotent")
