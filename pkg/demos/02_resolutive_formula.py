"""
Solving a forced operator recurrence three ways
===============================================

``Y_{p+2} = L0 Y_p + L1 Y_{p+1} + phi_{p+1}`` with ``Y_0 = A`` and
``Y_1 = B``.  We step the recurrence, evaluate the closed form
``Y_p = alpha_p A + beta_p B + sum_r beta_{p-r} phi_r`` and expand the same
closed form word by word, then compare.
"""

import numpy as np

from opseq import (
    Problem,
    relative_deviation,
    solve_closed_form,
    solve_commuting_chebyshev,
    solve_iterative,
    solve_words_oracle,
)

rng = np.random.default_rng(1)


def cplx(*shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


# %%
# Fibonacci is the scalar case with ``L0 = L1 = 1``.
fib = Problem(np.ones((1, 1)), np.ones((1, 1)), np.zeros(1), np.ones(1), 15)
print([int(y[0].real) for y in solve_closed_form(fib).values])

# %%
# A random 3x3 problem with forcing.  All three routes agree to rounding.
n, P = 3, 12
prob = Problem(cplx(n, n) / 2, cplx(n, n) / 2, cplx(n), cplx(n), P, [cplx(n) for _ in range(P - 1)])
it, cf, wo = solve_iterative(prob), solve_closed_form(prob), solve_words_oracle(prob)
print("iterative vs closed form:", relative_deviation(it, cf))
print("iterative vs words      :", relative_deviation(it, wo))

# %%
# When ``L0`` and ``L1`` commute the solution is a Chebyshev polynomial of
# the second kind in ``X = L1 (-L0)^(-1/2) / 2``.
r = cplx(n, n) / 2
L0 = -(np.eye(n) + 0.3 * r)
L1 = 0.5 * r + 0.2 * r @ r
comm = Problem(L0, L1, cplx(n), cplx(n), P, [cplx(n) for _ in range(P - 1)])
print("chebyshev vs closed form:", relative_deviation(solve_commuting_chebyshev(comm), solve_closed_form(comm)))

# %%
# With ``L0 = -E`` and ``L1 = 0`` the sequence is ``U_{p-1}(0)``, which has
# period four.
rot = Problem(-np.eye(1), np.zeros((1, 1)), np.zeros(1), np.ones(1), 9)
print([round(y[0].real) for y in solve_commuting_chebyshev(rot).values])
