"""
Cauchy problem for ``Y_{p+2} = L0 Y_p + L1 Y_{p+1} + phi_{p+1}``.

Four routes produce the same sequence ``Y_0 .. Y_P``:

* :func:`solve_iterative` steps the recurrence literally (ground truth);
* :func:`solve_closed_form` evaluates the resolutive formula
  ``Y_p = alpha_p A + beta_p B + sum_{r=1}^{p-1} beta_{p-r} phi_r`` with the
  operators ``beta_p`` built by their two-term recurrence;
* :func:`solve_words_oracle` evaluates the same formula through the explicit
  word expansions (exponential cost, reference only);
* :func:`solve_commuting_chebyshev` uses Chebyshev polynomials of the second
  kind, valid when ``L0`` and ``L1`` commute and ``-L0`` has a square root.

Forcing is indexed from 1: ``forcing[0]`` is ``phi_1`` and first enters
``Y_2``.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np

from . import ops, words
from .errors import DimensionError, NotCommutingError
from .matrix import chebyshev_U

METHODS = ("iterative", "closed_form", "chebyshev", "words_oracle")
COMMUTE_RTOL = 1e-10


@dataclass(frozen=True)
class Problem:
    L0: object
    L1: object
    A: object
    B: object
    P: int
    forcing: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "forcing", tuple(self.forcing))
        if self.P < 0:
            raise ValueError("P must be nonnegative")
        if self.forcing and len(self.forcing) != max(self.P - 1, 0):
            raise ValueError(
                f"forcing must hold phi_1..phi_{self.P - 1} ({max(self.P - 1, 0)} values),"
                f" got {len(self.forcing)}"
            )
        if isinstance(self.L0, np.ndarray):
            _check_matrix_problem(self)

    def phi(self, r: int):
        """``phi_r`` for ``r >= 1``; zero when the problem is homogeneous."""
        if not self.forcing:
            return 0 * self.A
        return self.forcing[r - 1]

    @property
    def homogeneous(self) -> bool:
        return not self.forcing


def _check_matrix_problem(prob: Problem):
    L0, L1 = prob.L0, prob.L1
    if L0.ndim != 2 or L0.shape[0] != L0.shape[1]:
        raise DimensionError(f"L0 must be square, got shape {L0.shape}")
    if L1.shape != L0.shape:
        raise DimensionError(f"L0 is {L0.shape} but L1 is {np.shape(L1)}")
    n = L0.shape[0]
    vecs = [("A", prob.A), ("B", prob.B)] + [
        (f"phi_{r}", v) for r, v in enumerate(prob.forcing, start=1)
    ]
    shape = np.shape(prob.A)
    for name, v in vecs:
        if np.shape(v)[:1] != (n,) or np.shape(v) != shape:
            raise DimensionError(f"{name} has shape {np.shape(v)}, expected leading dimension {n}")


@dataclass(frozen=True)
class SolutionSequence:
    values: tuple
    method: str

    def __len__(self):
        return len(self.values)

    def __getitem__(self, p):
        return self.values[p]


def _initial(prob: Problem) -> list:
    return [copy.copy(prob.A), copy.copy(prob.B)][: prob.P + 1]


def solve_iterative(prob: Problem) -> SolutionSequence:
    ys = _initial(prob)
    for p in range(prob.P - 1):
        ys.append(prob.L0 @ ys[p] + prob.L1 @ ys[p + 1] + prob.phi(p + 1))
    return SolutionSequence(tuple(ys), "iterative")


def beta_operators(L0, L1, P: int) -> list:
    """``[beta_0, ..., beta_P]`` from ``beta_{p+2} = L0 beta_p + L1 beta_{p+1}``."""
    eye = ops.identity_like(L0)
    betas = [0 * eye, eye]
    for p in range(P - 1):
        betas.append(L0 @ betas[p] + L1 @ betas[p + 1])
    return betas[: P + 1]


def alpha_operators(L0, L1, P: int, betas: list | None = None) -> list:
    """``[alpha_0, ..., alpha_P]`` with ``alpha_p = beta_{p-1} L0`` for ``p >= 2``."""
    if betas is None:
        betas = beta_operators(L0, L1, max(P - 1, 1))
    eye = ops.identity_like(L0)
    alphas = [eye, 0 * eye] + [betas[p - 1] @ L0 for p in range(2, P + 1)]
    return alphas[: P + 1]


def _resolve(prob: Problem, alphas, betas, method: str) -> SolutionSequence:
    ys = _initial(prob)
    for p in range(2, prob.P + 1):
        y = alphas[p] @ prob.A + betas[p] @ prob.B
        if not prob.homogeneous:
            for r in range(1, p):
                y = y + betas[p - r] @ prob.phi(r)
        ys.append(y)
    return SolutionSequence(tuple(ys), method)


def solve_closed_form(prob: Problem) -> SolutionSequence:
    betas = beta_operators(prob.L0, prob.L1, prob.P)
    alphas = alpha_operators(prob.L0, prob.L1, prob.P, betas)
    return _resolve(prob, alphas, betas, "closed_form")


def solve_words_oracle(prob: Problem, max_terms: int | None = None) -> SolutionSequence:
    """Resolutive formula evaluated through the word expansions of alpha/beta."""
    backend = (prob.L0, prob.L1)
    ys = _initial(prob)
    betas = [words.beta_expansion(k, max_terms) for k in range(prob.P + 1)]
    for p in range(2, prob.P + 1):
        y = words.evaluate_word_sum(words.alpha_expansion(p, max_terms), backend, prob.A)
        y = y + words.evaluate_word_sum(betas[p], backend, prob.B)
        if not prob.homogeneous:
            for r in range(1, p):
                y = y + words.evaluate_word_sum(betas[p - r], backend, prob.phi(r))
        ys.append(y)
    return SolutionSequence(tuple(ys), "words_oracle")


def check_commuting(L0, L1, rtol: float = COMMUTE_RTOL) -> float:
    """Return the commutator norm, raising :class:`NotCommutingError` if too large."""
    c = ops.commutator_norm(L0, L1)
    scale = max(ops.norm(L0) * ops.norm(L1), ops.norm(L0 @ L1), 1e-300)
    if c > rtol * scale:
        raise NotCommutingError(
            f"L0 and L1 do not commute: commutator norm {c:.3e} (scale {scale:.3e})", c
        )
    return c


def chebyshev_operators(L0, L1, P: int) -> tuple[list, list]:
    """``(alphas, betas)`` from the Chebyshev form for commuting coefficients.

    ``beta_p = S^(p-1) U_{p-1}(X)`` and ``alpha_p = -S^p U_{p-2}(X)`` with
    ``S = (-L0)^(1/2)`` (principal branch) and ``X = L1 S^(-1) / 2``.
    """
    check_commuting(L0, L1)
    root = ops.operator_sqrt(-1 * L0)
    x = 0.5 * (L1 @ ops.operator_inverse(root))
    eye = ops.identity_like(L0)
    spow = [eye]
    for _ in range(P):
        spow.append(root @ spow[-1])
    cheb = [chebyshev_U(k, x) for k in range(max(P, 1))]
    betas = [0 * eye, eye] + [spow[p - 1] @ cheb[p - 1] for p in range(2, P + 1)]
    alphas = [eye, 0 * eye] + [-1 * (spow[p] @ cheb[p - 2]) for p in range(2, P + 1)]
    return alphas[: P + 1], betas[: P + 1]


def solve_commuting_chebyshev(prob: Problem) -> SolutionSequence:
    alphas, betas = chebyshev_operators(prob.L0, prob.L1, prob.P)
    return _resolve(prob, alphas, betas, "chebyshev")


SOLVERS = {
    "iterative": solve_iterative,
    "closed_form": solve_closed_form,
    "chebyshev": solve_commuting_chebyshev,
    "words_oracle": solve_words_oracle,
}


def relative_deviation(a: SolutionSequence, b: SolutionSequence) -> float:
    """Max over ``p`` of ``|a_p - b_p|``, relative to the largest value in either sequence."""
    if len(a) != len(b):
        raise ValueError(f"sequences differ in length: {len(a)} vs {len(b)}")
    scale = max([ops.norm(y) for y in a.values + b.values] + [0.0])
    diff = max([ops.norm(x - y) for x, y in zip(a.values, b.values)] + [0.0])
    if scale == 0:
        return diff
    return diff / scale
