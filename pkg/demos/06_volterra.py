"""
An integro-difference equation
==============================

``f'_{p+2} = beta f_{p+1} + alpha f_p`` with prescribed values ``f_p(0)``
integrates to the operator recurrence with ``L0 = alpha V`` and
``L1 = beta V``, where ``V f = int_0^t f``.  Polynomials are closed under
``V``, so every route is exact up to rounding.
"""

import numpy as np

from opseq.applications import PolyFunction, cauchy_kernel, solve_volterra_problem, volterra_power

# %%
# ``V^n`` as ``n`` nested integrals equals a single integral against the
# kernel ``(t - s)^(n-1) / (n-1)!``.
one = PolyFunction.constant(1)
print(volterra_power(3, one).coef.real)
t2 = PolyFunction.monomial(2)
print(volterra_power(4, t2).coef[6].real, cauchy_kernel(4, t2).coef[6].real, 1 / 360)
worst = max(
    volterra_power(n, PolyFunction.monomial(j)).max_abs_diff(cauchy_kernel(n, PolyFunction.monomial(j)))
    for n in range(1, 9)
    for j in range(7)
)
print("kernel identity, n <= 8, degree <= 6:", worst)

# %%
# With ``alpha = 0``, ``beta = 1`` and zero boundary data the solution is
# repeated integration of ``f_1 = 1``.
sol = solve_volterra_problem(0, 1, PolyFunction(), one, [0] * 5, 6)
print([round(float(f(1.0).real), 6) for f in sol.iterative])

# %%
# A full problem: the derivative relation and the boundary values hold on
# the computed sequence.
f0, f1 = PolyFunction([1.0]), PolyFunction([0.0, 1.0])
boundary = [0.5, 0.25, 0.125, 0, 0, 0, 0, 0, -1]
sol = solve_volterra_problem(1.0, 0.5, f0, f1, boundary, 10)
print("paths agree to", sol.max_deviation())
print("derivative residual", max(sol.derivative_residuals))
print("boundary error", max(sol.boundary_errors))
