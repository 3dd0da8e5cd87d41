"""
Functional-difference equations driven by translations.

``f_{p+2}(t) = -f_p(t - tau0) + f_{p+1}(t + tau1)`` is the operator
recurrence with ``L0 = -T(-tau0)`` and ``L1 = T(tau1)``, where
``T(a) = exp(a d/dt)`` maps ``f(t)`` to ``f(t + a)``.

Values are kept symbolic: a :class:`ShiftExpansion` is a finite combination
of translated base functions ``f0``/``f1`` with exact (``Fraction``) offsets,
and a :class:`ShiftOperator` a finite combination of translations.  Nothing
is discretized until the final evaluation at sample points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .. import ops
from ..errors import SquareRootUnavailableError
from ..matrix import chebyshev_U
from ..solver import Problem, solve_closed_form, solve_commuting_chebyshev, solve_iterative

BASE_FUNCTIONS: dict[str, Callable] = {
    "exp": np.exp,
    "exp_neg": lambda t: np.exp(-np.asarray(t, dtype=float)),
    "sin": np.sin,
    "cos": np.cos,
    "gauss": lambda t: np.exp(-np.asarray(t, dtype=float) ** 2),
    "one": lambda t: np.ones_like(np.asarray(t, dtype=float)),
    "t": lambda t: np.asarray(t, dtype=float),
}


def _offset(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _clean(terms):
    return {k: complex(c) for k, c in terms.items() if c != 0}


class ShiftOperator:
    """``sum_a c_a T(a)``: a finite combination of translations."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        merged: dict[Fraction, complex] = {}
        for a, c in (terms or {}).items():
            a = _offset(a)
            merged[a] = merged.get(a, 0) + c
        self.terms = _clean(merged)

    @classmethod
    def translation(cls, tau, coefficient: complex = 1) -> "ShiftOperator":
        return cls({_offset(tau): coefficient})

    def __add__(self, other):
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return ShiftOperator(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, c):
        if isinstance(c, (int, float, complex)):
            return ShiftOperator({a: c * v for a, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, ShiftOperator):
            out: dict[Fraction, complex] = {}
            for a, c in self.terms.items():
                for b, d in other.terms.items():
                    out[a + b] = out.get(a + b, 0) + c * d
            return ShiftOperator(out)
        if isinstance(other, ShiftExpansion):
            out = {}
            for a, c in self.terms.items():
                for (name, b), d in other.terms.items():
                    key = (name, a + b)
                    out[key] = out.get(key, 0) + c * d
            return ShiftExpansion(out)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, ShiftOperator) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"({c:g})T({float(a):g})" for a, c in sorted(self.terms.items()))
        return f"ShiftOperator({body or '0'})"


class ShiftExpansion:
    """``sum c * f_id(t + offset)`` over base functions ``f0``, ``f1``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        merged: dict[tuple[str, Fraction], complex] = {}
        for (name, a), c in (terms or {}).items():
            key = (name, _offset(a))
            merged[key] = merged.get(key, 0) + c
        self.terms = _clean(merged)

    @classmethod
    def base(cls, name: str) -> "ShiftExpansion":
        return cls({(name, Fraction(0)): 1})

    def __add__(self, other):
        if not isinstance(other, ShiftExpansion):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ShiftExpansion(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, c):
        if isinstance(c, (int, float, complex)):
            return ShiftExpansion({k: c * v for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ShiftExpansion) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def evaluate(self, funcs: Mapping[str, Callable], t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for (name, a), c in self.terms.items():
            out = out + c * funcs[name](t + float(a))
        return out

    def __repr__(self):
        body = " + ".join(
            f"({c:g}){name}(t{float(a):+g})" for (name, a), c in sorted(self.terms.items())
        )
        return f"ShiftExpansion({body or '0'})"


@ops.identity_like.register
def _(op: ShiftOperator):
    return ShiftOperator({0: 1})


@ops.norm.register
def _(x: ShiftOperator) -> float:
    return sum(abs(c) for c in x.terms.values())


@ops.norm.register
def _(x: ShiftExpansion) -> float:
    return sum(abs(c) for c in x.terms.values())


@ops.operator_sqrt.register
def _(op: ShiftOperator):
    # c T(a) = (sqrt(c) T(a/2))^2; sums of translations have no such root
    if len(op.terms) != 1:
        raise SquareRootUnavailableError("only a single scaled translation has a square root here")
    ((a, c),) = op.terms.items()
    return ShiftOperator({a / 2: complex(np.sqrt(complex(c)))})


@ops.operator_inverse.register
def _(op: ShiftOperator):
    if len(op.terms) != 1:
        raise TypeError("only a single scaled translation is invertible here")
    ((a, c),) = op.terms.items()
    return ShiftOperator({-a: 1 / c})


def shift_operators(tau0, tau1) -> tuple[ShiftOperator, ShiftOperator]:
    """``(L0, L1) = (-T(-tau0), T(tau1))``."""
    return ShiftOperator.translation(-_offset(tau0), -1), ShiftOperator.translation(tau1)


def shift_problem(tau0, tau1, P: int) -> Problem:
    L0, L1 = shift_operators(tau0, tau1)
    return Problem(L0, L1, ShiftExpansion.base("f0"), ShiftExpansion.base("f1"), P)


def binomial_shift_value(f0: Callable, f1: Callable, tau0: float, tau1: float, p: int, t):
    """Explicit double sum for ``f_p(t)``.

    ``sum_k (-1)^k C(p-1-k, k) f1(t + (p-1-2k) tau1 - k tau0)
    - sum_k (-1)^k C(p-2-k, k) f0(t + (p-2-2k) tau1 - (k+1) tau0)``
    """
    t = np.asarray(t, dtype=float)
    if p == 0:
        return np.asarray(f0(t), dtype=complex)
    out = np.zeros(t.shape, dtype=complex)
    for k in range((p - 1) // 2 + 1):
        out = out + (-1) ** k * math.comb(p - 1 - k, k) * f1(t + (p - 1 - 2 * k) * tau1 - k * tau0)
    for k in range((p - 2) // 2 + 1) if p >= 2 else ():
        out = out - (-1) ** k * math.comb(p - 2 - k, k) * f0(
            t + (p - 2 - 2 * k) * tau1 - (k + 1) * tau0
        )
    return out


def exp_pair_value(p: int, t, tau0: float, tau1: float):
    """``f_p(t)`` for ``f0 = exp(-t)``, ``f1 = exp(t)`` through scalar Chebyshev values."""
    t = np.asarray(t, dtype=float)
    if p == 0:
        return np.exp(-t).astype(complex)
    if p == 1:
        return np.exp(t).astype(complex)
    g = tau1 + tau0 / 2
    up = np.exp(-(p - 1) / 2 * tau0) * chebyshev_U(p - 1, 0.5 * np.exp(g))
    down = np.exp(p / 2 * tau0) * chebyshev_U(p - 2, 0.5 * np.exp(-g))
    return (up * np.exp(t) - down * np.exp(-t)).astype(complex)


def recurrence_callables(f0: Callable, f1: Callable, tau0: float, tau1: float, P: int):
    """``[f_0, ..., f_P]`` as plain Python closures built by the recurrence."""
    fs = [f0, f1]
    for p in range(P - 1):
        a, b = fs[p], fs[p + 1]
        fs.append(lambda t, a=a, b=b: -a(np.asarray(t) - tau0) + b(np.asarray(t) + tau1))
    return fs[: P + 1]


@dataclass(frozen=True)
class ShiftSolution:
    samples: np.ndarray
    expansions: tuple  # f_p as ShiftExpansion, from the resolutive formula
    recurrence: np.ndarray  # (P+1, m) table, general iterative solver
    resolutive: np.ndarray  # (P+1, m) table, general closed-form solver
    binomial: np.ndarray  # (P+1, m) table, explicit double sum
    chebyshev: np.ndarray | None  # (P+1, m) table, commuting Chebyshev path

    def tables(self) -> dict[str, np.ndarray]:
        out = {"recurrence": self.recurrence, "resolutive": self.resolutive, "binomial": self.binomial}
        if self.chebyshev is not None:
            out["chebyshev"] = self.chebyshev
        return out

    def max_deviation(self) -> float:
        tabs = list(self.tables().values())
        scale = max(float(np.max(np.abs(tab))) for tab in tabs) or 1.0
        return max(
            float(np.max(np.abs(a - b))) / scale for i, a in enumerate(tabs) for b in tabs[i + 1 :]
        )


def solve_shift_problem(
    f0: Callable,
    f1: Callable,
    tau0: float,
    tau1: float,
    P: int,
    samples: Sequence[float],
    chebyshev: bool = True,
) -> ShiftSolution:
    """Solve the translation recurrence along every available route.

    Returns per-``p`` evaluation tables at ``samples``.
    """
    if P < 2:
        raise ValueError("P must be at least 2")
    samples = np.asarray(samples, dtype=float)
    funcs = {"f0": f0, "f1": f1}
    prob = shift_problem(tau0, tau1, P)

    def table(seq):
        return np.array([e.evaluate(funcs, samples) for e in seq.values])

    closed = solve_closed_form(prob)
    cheb = table(solve_commuting_chebyshev(prob)) if chebyshev else None
    binom = np.array([binomial_shift_value(f0, f1, tau0, tau1, p, samples) for p in range(P + 1)])
    return ShiftSolution(
        samples=samples,
        expansions=closed.values,
        recurrence=table(solve_iterative(prob)),
        resolutive=table(closed),
        binomial=binom,
        chebyshev=cheb,
    )
