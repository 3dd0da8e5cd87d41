"""
Integro-difference equations with the Volterra operator ``(V f)(t) = int_0^t f``.

The difference-differential equation ``f'_{p+2} = beta f_{p+1} + alpha f_p``
with prescribed ``f_p(0)`` is the operator recurrence

    f_{p+2} = (beta V) f_{p+1} + (alpha V) f_p + f_{p+2}(0)

Polynomials are closed under ``V`` and it acts exactly there, so this backend
works on :class:`PolyFunction` values.  Powers of ``V`` are available two
ways: repeated antidifferentiation (:func:`volterra_power`) and the
single-integral Cauchy kernel ``(1/(n-1)!) int_0^t (t-s)^(n-1) f(s) ds``
(:func:`cauchy_kernel`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import ops
from ..errors import DegreeOverflowError
from ..solver import Problem, solve_closed_form, solve_iterative

DEGREE_CAP = 64


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:0]


class PolyFunction:
    """Polynomial ``sum_i c_i t^i`` with complex coefficients."""

    __slots__ = ("coef", "cap")

    def __init__(self, coef=(), cap: int = DEGREE_CAP):
        c = _trim(np.atleast_1d(np.asarray(coef, dtype=complex)).copy())
        if c.size - 1 > cap:
            raise DegreeOverflowError(f"degree {c.size - 1} exceeds cap {cap}")
        c.setflags(write=False)
        self.coef = c
        self.cap = cap

    @classmethod
    def constant(cls, c: complex, cap: int = DEGREE_CAP) -> "PolyFunction":
        return cls([c], cap)

    @classmethod
    def monomial(cls, j: int, c: complex = 1, cap: int = DEGREE_CAP) -> "PolyFunction":
        return cls([0] * j + [c], cap)

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return self.coef.size - 1

    def padded(self, size: int) -> np.ndarray:
        out = np.zeros(max(size, self.coef.size), complex)
        out[: self.coef.size] = self.coef
        return out

    def __add__(self, other):
        if not isinstance(other, PolyFunction):
            return NotImplemented
        n = max(self.coef.size, other.coef.size)
        return PolyFunction(self.padded(n) + other.padded(n), max(self.cap, other.cap))

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, c):
        if isinstance(c, (int, float, complex, np.number)):
            return PolyFunction(complex(c) * self.coef, self.cap)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(np.asarray(t), self.coef) if self.coef.size else (
            np.zeros_like(np.asarray(t, dtype=complex))
        )

    def __eq__(self, other):
        return isinstance(other, PolyFunction) and np.array_equal(self.coef, other.coef)

    def derivative(self) -> "PolyFunction":
        if self.coef.size <= 1:
            return PolyFunction((), self.cap)
        return PolyFunction(self.coef[1:] * np.arange(1, self.coef.size), self.cap)

    def antiderivative(self) -> "PolyFunction":
        """``int_0^t f``; the constant of integration is zero."""
        if self.degree + 1 > self.cap:
            raise DegreeOverflowError(f"integration would reach degree {self.degree + 1} > cap {self.cap}")
        if not self.coef.size:
            return self
        return PolyFunction(
            np.concatenate([[0], self.coef / np.arange(1, self.coef.size + 1)]), self.cap
        )

    def at_zero(self) -> complex:
        return complex(self.coef[0]) if self.coef.size else 0j

    def max_abs_diff(self, other: "PolyFunction") -> float:
        n = max(self.coef.size, other.coef.size, 1)
        return float(np.max(np.abs(self.padded(n) - other.padded(n))))

    def __repr__(self):
        return f"PolyFunction({np.array2string(self.coef, precision=6)})"


def volterra_power(n: int, f: PolyFunction) -> PolyFunction:
    """``V^n f`` by ``n`` successive antiderivatives vanishing at 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if f.degree + n > f.cap:
        raise DegreeOverflowError(f"degree {f.degree} + {n} exceeds cap {f.cap}")
    for _ in range(n):
        f = f.antiderivative()
    return f


def _kernel_weight(n: int, i: int) -> Fraction:
    # int_0^t (t-s)^(n-1) s^i ds / (n-1)! = w * t^(n+i), expanded binomially
    total = sum(
        Fraction((-1) ** j * math.comb(n - 1, j), i + j + 1) for j in range(n)
    )
    return total / math.factorial(n - 1)


def cauchy_kernel(n: int, f: PolyFunction) -> PolyFunction:
    """``(1/(n-1)!) int_0^t (t-s)^(n-1) f(s) ds``, integrated termwise."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if f.degree + n > f.cap:
        raise DegreeOverflowError(f"degree {f.degree} + {n} exceeds cap {f.cap}")
    if not f.coef.size:
        return f
    out = np.zeros(f.coef.size + n, complex)
    for i, c in enumerate(f.coef):
        out[n + i] = c * float(_kernel_weight(n, i))
    return PolyFunction(out, f.cap)


class VolterraOperator:
    """Polynomial in ``V``: ``sum_k w_k V^k``."""

    __slots__ = ("weights",)

    def __init__(self, weights=()):
        w = _trim(np.atleast_1d(np.asarray(weights, dtype=complex)).copy())
        w.setflags(write=False)
        self.weights = w

    @classmethod
    def power(cls, n: int, c: complex = 1) -> "VolterraOperator":
        return cls([0] * n + [c])

    def _padded(self, size):
        out = np.zeros(max(size, self.weights.size), complex)
        out[: self.weights.size] = self.weights
        return out

    def __add__(self, other):
        if not isinstance(other, VolterraOperator):
            return NotImplemented
        n = max(self.weights.size, other.weights.size)
        return VolterraOperator(self._padded(n) + other._padded(n))

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, c):
        if isinstance(c, (int, float, complex, np.number)):
            return VolterraOperator(complex(c) * self.weights)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, VolterraOperator):
            if not self.weights.size or not other.weights.size:
                return VolterraOperator()
            return VolterraOperator(np.convolve(self.weights, other.weights))
        if isinstance(other, PolyFunction):
            out = PolyFunction((), other.cap)
            g = other
            for k, w in enumerate(self.weights):
                if k:
                    g = g.antiderivative()
                if w:
                    out = out + w * g
            return out
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, VolterraOperator) and np.array_equal(self.weights, other.weights)

    def __repr__(self):
        return f"VolterraOperator({np.array2string(self.weights, precision=6)})"


@ops.identity_like.register
def _(op: VolterraOperator):
    return VolterraOperator([1])


@ops.norm.register
def _(x: VolterraOperator) -> float:
    return float(np.max(np.abs(x.weights))) if x.weights.size else 0.0


@ops.norm.register
def _(x: PolyFunction) -> float:
    return float(np.max(np.abs(x.coef))) if x.coef.size else 0.0


def volterra_beta_operator(p: int, alpha: complex, beta: complex) -> VolterraOperator:
    """``beta_p = sum_k alpha^k beta^(p-1-2k) C(p-1-k, k) V^(p-1-k)``."""
    if p == 0:
        return VolterraOperator()
    w = np.zeros(p, complex)
    for k in range((p - 1) // 2 + 1):
        w[p - 1 - k] += alpha**k * beta ** (p - 1 - 2 * k) * math.comb(p - 1 - k, k)
    return VolterraOperator(w)


def volterra_alpha_operator(p: int, alpha: complex, beta: complex) -> VolterraOperator:
    """``alpha_p = sum_k alpha^(k+1) beta^(p-2-2k) C(p-2-k, k) V^(p-1-k)`` for ``p >= 2``."""
    if p == 0:
        return VolterraOperator([1])
    if p == 1:
        return VolterraOperator()
    w = np.zeros(p, complex)
    for k in range((p - 2) // 2 + 1):
        w[p - 1 - k] += alpha ** (k + 1) * beta ** (p - 2 - 2 * k) * math.comb(p - 2 - k, k)
    return VolterraOperator(w)


def volterra_problem(alpha, beta, f0: PolyFunction, f1: PolyFunction, boundary: Sequence, P: int) -> Problem:
    """Operator form: ``L0 = alpha V``, ``L1 = beta V``, ``phi_r = f_{r+1}(0)``."""
    if len(boundary) != max(P - 1, 0):
        raise ValueError(f"need f_2(0)..f_P(0): {max(P - 1, 0)} values, got {len(boundary)}")
    cap = max(f0.cap, f1.cap)
    forcing = [PolyFunction.constant(c, cap) for c in boundary]
    return Problem(
        VolterraOperator.power(1, alpha), VolterraOperator.power(1, beta), f0, f1, P, forcing
    )


def explicit_volterra_value(p: int, alpha, beta, f0: PolyFunction, f1: PolyFunction, boundary) -> PolyFunction:
    """``f_p`` from the binomial sums with Cauchy-kernel powers of ``V``.

    ``boundary[m]`` is ``f_{m+2}(0)``.  Constant forcing terms are integrated
    in closed form: ``V^n c = c t^n / n!``.
    """
    if p == 0:
        return f0
    if p == 1:
        return f1
    cap = max(f0.cap, f1.cap)
    out = PolyFunction((), cap)
    for k in range((p - 2) // 2 + 1):
        w = alpha ** (k + 1) * beta ** (p - 2 - 2 * k) * math.comb(p - 2 - k, k)
        out = out + w * cauchy_kernel(p - 1 - k, f0)
    for k in range((p - 1) // 2 + 1):
        w = alpha**k * beta ** (p - 1 - 2 * k) * math.comb(p - 1 - k, k)
        out = out + w * cauchy_kernel(p - 1 - k, f1)
    for m in range(1, p - 1):
        c = boundary[m - 1]
        for k in range((p - m - 1) // 2 + 1):
            n = p - m - 1 - k
            w = alpha**k * beta ** (p - m - 1 - 2 * k) * math.comb(n, k)
            out = out + PolyFunction.monomial(n, w * c / math.factorial(n), cap)
    return out + PolyFunction.constant(boundary[p - 2], cap)


@dataclass(frozen=True)
class VolterraSolution:
    iterative: tuple
    resolutive: tuple
    explicit: tuple
    derivative_residuals: tuple  # max |f'_{p+2} - beta f_{p+1} - alpha f_p| for p = 0..P-2
    boundary_errors: tuple  # |f_{p+2}(0) - prescribed| for p = 0..P-2

    def max_deviation(self) -> float:
        paths = (self.iterative, self.resolutive, self.explicit)
        scale = max(ops.norm(f) for path in paths for f in path) or 1.0
        return max(
            a.max_abs_diff(b) / scale
            for i, pa in enumerate(paths)
            for pb in paths[i + 1 :]
            for a, b in zip(pa, pb)
        )


def solve_volterra_problem(
    alpha, beta, f0: PolyFunction, f1: PolyFunction, boundary: Sequence, P: int
) -> VolterraSolution:
    """Solve ``f'_{p+2} = beta f_{p+1} + alpha f_p`` with prescribed ``f_p(0)``.

    Runs the generic iterative and closed-form solvers on the polynomial
    backend, the explicit binomial/kernel formula, and checks the original
    differential relation on the iterative result.
    """
    if P < 2:
        raise ValueError("P must be at least 2")
    prob = volterra_problem(alpha, beta, f0, f1, boundary, P)
    it = solve_iterative(prob).values
    closed = solve_closed_form(prob).values
    explicit = tuple(explicit_volterra_value(p, alpha, beta, f0, f1, boundary) for p in range(P + 1))
    resid = tuple(
        ops.norm(it[p + 2].derivative() - beta * it[p + 1] - alpha * it[p]) for p in range(P - 1)
    )
    bnd = tuple(abs(it[p + 2].at_zero() - boundary[p]) for p in range(P - 1))
    return VolterraSolution(it, closed, explicit, resid, bnd)
