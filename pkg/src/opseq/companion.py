"""
Companion-matrix powers and truncated generating functions.

The second-order recurrence is equivalent to the first-order block system
driven by ``C1 = [[0, E], [L0, L1]]``, whose ``p``-th power carries
``[[alpha_p, beta_p], [alpha_{p+1}, beta_{p+1}]]``.  The generating functions
of the two operator sequences are rational in ``s``:

    sum_p beta_p s^p  = (E - L1 s - L0 s^2)^-1 s
    sum_p alpha_p s^p = (E - L1 s - L0 s^2)^-1 (E - L1 s)

The checks below compare truncated partial sums against those closed forms.
Convergence of the series is not guaranteed in general; :func:`in_convergence_gate`
is a sufficient heuristic and callers should only assert inside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrix import as_matrix, chebyshev_U, identity, mat_inverse, mat_pow
from .solver import alpha_operators, beta_operators

GATE = 0.5


@dataclass(frozen=True)
class BlockMatrix2x2:
    top_left: np.ndarray
    top_right: np.ndarray
    bottom_left: np.ndarray
    bottom_right: np.ndarray

    def __post_init__(self):
        shapes = {b.shape for b in self.blocks()}
        if len(shapes) != 1:
            raise DimensionError(f"blocks have differing shapes {sorted(shapes)}")

    def blocks(self):
        return (self.top_left, self.top_right, self.bottom_left, self.bottom_right)

    @property
    def n(self) -> int:
        return self.top_left.shape[0]

    def to_dense(self) -> np.ndarray:
        return np.block([[self.top_left, self.top_right], [self.bottom_left, self.bottom_right]])

    @classmethod
    def from_dense(cls, m) -> "BlockMatrix2x2":
        m = as_matrix(m)
        if m.shape[0] % 2:
            raise DimensionError(f"odd dimension {m.shape[0]} cannot split into 2x2 blocks")
        n = m.shape[0] // 2
        return cls(m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:])

    def max_abs_diff(self, other: "BlockMatrix2x2") -> float:
        return float(np.max(np.abs(self.to_dense() - other.to_dense())))


def companion_matrix(L0, L1) -> np.ndarray:
    L0, L1 = as_matrix(L0), as_matrix(L1)
    if L0.shape != L1.shape:
        raise DimensionError(f"L0 is {L0.shape} but L1 is {L1.shape}")
    n = L0.shape[0]
    return np.block([[np.zeros((n, n), complex), identity(n)], [L0, L1]])


def companion_power(L0, L1, p: int) -> BlockMatrix2x2:
    """``C1**p`` split into its four ``n x n`` blocks."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    return BlockMatrix2x2.from_dense(mat_pow(companion_matrix(L0, L1), p))


def companion_blocks_from_sequences(L0, L1, p: int) -> BlockMatrix2x2:
    """The block matrix ``[[alpha_p, beta_p], [alpha_{p+1}, beta_{p+1}]]``."""
    L0, L1 = as_matrix(L0), as_matrix(L1)
    betas = beta_operators(L0, L1, p + 1)
    alphas = alpha_operators(L0, L1, p + 1, betas)
    return BlockMatrix2x2(alphas[p], betas[p], alphas[p + 1], betas[p + 1])


def companion_residual(L0, L1, p: int) -> float:
    """Relative block difference between ``C1**p`` and the alpha/beta layout."""
    power = companion_power(L0, L1, p)
    expected = companion_blocks_from_sequences(L0, L1, p)
    scale = max(float(np.max(np.abs(expected.to_dense()))), 1.0)
    return power.max_abs_diff(expected) / scale


def in_convergence_gate(L0, L1, s: complex, gate: float = GATE) -> bool:
    """Sufficient heuristic ``|L1| |s| + |L0| |s|^2 <= gate`` (spectral norms)."""
    n0 = np.linalg.norm(as_matrix(L0), 2)
    n1 = np.linalg.norm(as_matrix(L1), 2)
    return bool(n1 * abs(s) + n0 * abs(s) ** 2 <= gate)


def _resolvent(L0, L1, s):
    n = L0.shape[0]
    return mat_inverse(identity(n) - s * L1 - s * s * L0)


@dataclass(frozen=True)
class GenfunResidual:
    relative: float
    absolute: float


def _residual(partial, target) -> GenfunResidual:
    absolute = float(np.linalg.norm(partial - target))
    tn = float(np.linalg.norm(target))
    return GenfunResidual(absolute / tn if tn else absolute, absolute)


def _partial_sums(ops_list, s):
    out = np.zeros_like(ops_list[0])
    sums = []
    for p, op in enumerate(ops_list):
        out = out + op * s**p
        sums.append(out)
    return sums


def genfun_beta_residuals(L0, L1, s: complex, K: int) -> list[GenfunResidual]:
    """Residuals of ``sum_{p<=k} beta_p s^p`` for every ``k = 0..K``."""
    L0, L1 = as_matrix(L0), as_matrix(L1)
    target = _resolvent(L0, L1, s) * s
    return [_residual(ps, target) for ps in _partial_sums(beta_operators(L0, L1, K), s)]


def genfun_alpha_residuals(L0, L1, s: complex, K: int) -> list[GenfunResidual]:
    L0, L1 = as_matrix(L0), as_matrix(L1)
    n = L0.shape[0]
    target = _resolvent(L0, L1, s) @ (identity(n) - s * L1)
    return [_residual(ps, target) for ps in _partial_sums(alpha_operators(L0, L1, K), s)]


def genfun_beta_check(L0, L1, s: complex, K: int) -> float:
    """Relative residual of the order-``K`` truncation of ``sum_p beta_p s^p``."""
    return genfun_beta_residuals(L0, L1, s, K)[-1].relative


def genfun_alpha_check(L0, L1, s: complex, K: int) -> float:
    """Relative residual of the order-``K`` truncation of ``sum_p alpha_p s^p``."""
    return genfun_alpha_residuals(L0, L1, s, K)[-1].relative


def genfun_chebyshev_check(L1, s: complex, K: int) -> float:
    """``L0 = -E`` variant: ``sum_p U_p(L1/2) s^p`` against ``(E - L1 s + s^2)^-1``."""
    L1 = as_matrix(L1)
    n = L1.shape[0]
    target = mat_inverse(identity(n) - s * L1 + s * s * identity(n))
    partial = sum(chebyshev_U(p, 0.5 * L1) * s**p for p in range(K + 1))
    return _residual(partial, target).relative
