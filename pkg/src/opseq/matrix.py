"""
Dense complex matrices as operators.

A matrix operator is a square ``numpy`` array of dtype ``complex128``; the
functions below validate shapes and add the few operations the solvers need
beyond plain ``numpy``: checked inverse, principal square root and
Chebyshev polynomials of the second kind with an operator argument.
"""

from __future__ import annotations

import math
import operator
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import ops
from .errors import DimensionError, SingularOperatorError, SquareRootUnavailableError

PIVOT_RTOL = 1e-12
SQRT_MAX_CONDITION = 1e8
SQRT_RTOL = 1e-8


def as_matrix(data) -> np.ndarray:
    m = np.array(data, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a nonempty square matrix, got shape {m.shape}")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def _same_dim(*ms):
    dims = {m.shape for m in ms}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def mat_add(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a + b


def mat_mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def mat_scale(c: complex, m):
    return complex(c) * as_matrix(m)


def mat_pow(m, k: int):
    """``m**k`` for ``k >= 0`` by repeated squaring; ``m**0`` is the identity."""
    m = as_matrix(m)
    if k < 0:
        raise ValueError("negative powers are not supported, use mat_inverse")
    result = identity(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def mat_inverse(m, pivot_rtol: float = PIVOT_RTOL):
    """Inverse by LU with partial pivoting.

    Raises :class:`SingularOperatorError` when a pivot falls below
    ``pivot_rtol`` times the largest entry of ``m``.
    """
    m = as_matrix(m)
    scale = np.max(np.abs(m))
    if scale == 0:
        raise SingularOperatorError("matrix is zero")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < pivot_rtol * scale:
        raise SingularOperatorError(
            f"matrix is singular: smallest pivot {np.min(pivots):.3e} vs max entry {scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), identity(m.shape[0]))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    condition: float


def eigen(m) -> Spectrum:
    """Eigendecomposition with the condition number of the eigenvector basis."""
    m = as_matrix(m)
    lam, vec = np.linalg.eig(m)
    cond = float(np.linalg.cond(vec))
    if not np.isfinite(cond):
        cond = math.inf
    return Spectrum(lam, vec, cond)


def _principal_sqrt(lam: np.ndarray) -> np.ndarray:
    # sqrt(-1 - 0j) would land on -1j; clear signed zeros first
    lam = np.where(lam.imag == 0, lam.real + 0j, lam)
    return np.sqrt(lam)


def mat_sqrt(m, max_condition: float = SQRT_MAX_CONDITION, rtol: float = SQRT_RTOL):
    """Principal square root of a diagonalizable, nonsingular matrix.

    Each eigenvalue is mapped to the root with argument in ``(-pi/2, pi/2]``.
    Inputs that are singular, defective or too ill-conditioned raise
    :class:`SquareRootUnavailableError`; the general solver path does not
    need a square root and should be used instead.
    """
    m = as_matrix(m)
    spec = eigen(m)
    scale = max(float(np.max(np.abs(spec.eigenvalues))), 1e-300)
    if spec.condition > max_condition:
        raise SquareRootUnavailableError(
            f"eigenvector basis condition {spec.condition:.3e} exceeds {max_condition:.1e}"
            " (matrix not safely diagonalizable)"
        )
    if np.min(np.abs(spec.eigenvalues)) <= PIVOT_RTOL * scale:
        raise SquareRootUnavailableError("matrix is singular, no invertible square root")
    v = spec.eigenvectors
    s = (v * _principal_sqrt(spec.eigenvalues)) @ np.linalg.inv(v)
    resid = np.linalg.norm(s @ s - m) / np.linalg.norm(m)
    if resid > rtol:
        raise SquareRootUnavailableError(f"square root residual {resid:.3e} exceeds {rtol:.1e}")
    return s


def chebyshev_U(p: int, x):
    """Chebyshev polynomial of the second kind with an operator argument.

    Evaluates ``sum_m (-1)^m (p-m)!/(m!(p-2m)!) (2x)^(p-2m)`` directly.  Works
    for scalars and any operator type with ``@`` and a registered identity.
    """
    if p < 0:
        raise ValueError("degree must be nonnegative")
    if np.isscalar(x):
        eye, mul = 1.0, operator.mul
    else:
        eye, mul = ops.identity_like(x), operator.matmul
    two_x = 2 * x
    powers = [eye]
    for _ in range(p):
        powers.append(mul(two_x, powers[-1]))
    out = 0 * eye
    for m in range(p // 2 + 1):
        out = out + ((-1) ** m * math.comb(p - m, m)) * powers[p - 2 * m]
    return out


@ops.operator_sqrt.register
def _(op: np.ndarray):
    return mat_sqrt(op)


@ops.operator_inverse.register
def _(op: np.ndarray):
    return mat_inverse(op)
