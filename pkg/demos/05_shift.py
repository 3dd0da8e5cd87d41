"""
A functional-difference equation with translations
==================================================

``f_{p+2}(t) = -f_p(t - tau0) + f_{p+1}(t + tau1)`` is the operator
recurrence with ``L0 = -T(-tau0)`` and ``L1 = T(tau1)``, where ``T(a)``
translates by ``a``.  Values are kept as exact combinations of translated
base functions and only evaluated at the end.
"""

import numpy as np

from opseq.applications import BASE_FUNCTIONS, exp_pair_value, recurrence_callables, solve_shift_problem

f0, f1 = BASE_FUNCTIONS["exp_neg"], BASE_FUNCTIONS["exp"]
t = np.array([0.0, 0.5, 1.0])

# %%
# Run every route: stepping the recurrence, the closed form, the explicit
# binomial double sum and the commuting Chebyshev route.
sol = solve_shift_problem(f0, f1, 0.2, 0.3, 8, t)
print("largest disagreement:", sol.max_deviation())
print("f_4 =", sol.expansions[4])

# %%
# The table of values, one row per sample point.
for i, ti in enumerate(t):
    print(ti, np.round(sol.resolutive[:, i].real, 6))

# %%
# For ``exp(-t)``/``exp(t)`` the answer is a pair of scalar Chebyshev values.
direct = recurrence_callables(f0, f1, 0.2, 0.3, 8)
print(max(np.max(np.abs(exp_pair_value(p, t, 0.2, 0.3) - direct[p](t))) for p in range(9)))

# %%
# Without translations the recurrence is ``y_{p+2} = y_{p+1} - y_p``, which
# repeats every six steps.
flat = solve_shift_problem(f0, f1, 0.0, 0.0, 12, [0.0])
print(np.round(flat.recurrence[:, 0].real, 12))
