"""
Coefficients that square to zero
================================

If ``M0^2 = M1^2 = 0`` every word with a repeated letter vanishes, so the
Fibonacci-many words in ``beta_p`` collapse to at most two alternating
products.  The result depends only on ``p mod 3``.
"""

import numpy as np

from opseq import alpha_operators, beta_operators
from opseq.applications import nilpotent_alpha, nilpotent_beta, random_index2_pair

# %%
# The smallest example: the two off-diagonal units.  Here ``M0 M1`` and
# ``M1 M0`` are complementary projectors, so ``beta_4`` is the identity.
M0 = np.array([[0.0, 1.0], [0.0, 0.0]])
M1 = np.array([[0.0, 0.0], [1.0, 0.0]])
print(nilpotent_beta(4, M0, M1).real)

# %%
# ``alpha_p`` is exactly zero whenever ``p = 3k + 1``.
for p in range(2, 11):
    print(p, "zero" if not np.any(nilpotent_alpha(p, M0, M1)) else "nonzero")

# %%
# Random rank-one pairs ``u v^T`` with ``v^T u = 0`` against the general
# recurrence.
rng = np.random.default_rng(4)
a, b = random_index2_pair(4, rng)
betas, alphas = beta_operators(a, b, 12), alpha_operators(a, b, 12)
worst = max(
    max(np.max(np.abs(nilpotent_beta(p, a, b) - betas[p])), np.max(np.abs(nilpotent_alpha(p, a, b) - alphas[p])))
    for p in range(13)
)
print("largest deviation:", worst)
