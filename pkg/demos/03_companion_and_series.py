"""
Companion matrices and generating functions
===========================================

Stacking ``(Y_p, Y_{p+1})`` turns the recurrence into a first-order one with
the block companion matrix ``[[0, E], [L0, L1]]``.  Its powers carry the
``alpha``/``beta`` operators as blocks, and the truncated power series of
``beta_p`` converges to ``s (E - L1 s - L0 s^2)^(-1)``.
"""

import numpy as np

from opseq import companion_power, companion_residual, genfun_beta_check
from opseq.companion import genfun_beta_residuals, in_convergence_gate

rng = np.random.default_rng(3)
L0 = rng.normal(size=(2, 2)) / 2
L1 = rng.normal(size=(2, 2)) / 2

# %%
# The second power by hand is ``[[L0, L1], [L1 L0, L0 + L1^2]]``.
blocks = companion_power(L0, L1, 2)
print(np.allclose(blocks.bottom_left, L1 @ L0), np.allclose(blocks.bottom_right, L0 + L1 @ L1))
print("largest block residual for p <= 10:", max(companion_residual(L0, L1, p) for p in range(11)))

# %%
# Inside the convergence gate the series residual shrinks with every term.
s = 0.1
print("inside gate:", in_convergence_gate(L0, L1, s))
for K, res in enumerate(genfun_beta_residuals(L0, L1, s, 20)):
    if K % 4 == 0:
        print(f"K={K:2d} relative residual {res.relative:.3e}")

# %%
# Fibonacci at ``s = 0.1``: the series sums to ``s / (1 - s - s^2)``.
one = np.ones((1, 1))
print("fibonacci residual:", genfun_beta_check(one, one, 0.1, 40))
