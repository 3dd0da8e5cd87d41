"""
Counting orderings of two noncommuting letters
==============================================

When the coefficients of a recurrence do not commute, every product of
``L0`` and ``L1`` has to be kept in its own order.  This script builds the
symmetrized sums of words and the ``alpha``/``beta`` expansions, and checks
their sizes against the binomial and Fibonacci numbers.
"""

import math

import numpy as np

from opseq import G0, G1, alpha_expansion, beta_expansion, beta_operators, evaluate_word_sum, symmetrized_words

# %%
# Every distinct ordering of one ``L0`` and one ``L1``, then two and three.
print(symmetrized_words(1, 1))
print(symmetrized_words(2, 3))
print("terms:", len(symmetrized_words(2, 3)), "binomial:", math.comb(5, 2))

# %%
# ``beta_p`` collects words with ``t`` copies of ``L0`` and ``p-1-2t`` copies
# of ``L1``.  The number of words grows like the Fibonacci numbers.
for p in range(8):
    print(p, len(beta_expansion(p)), beta_expansion(p))

# %%
# The expansions obey the recurrence symbolically, before any operator is
# chosen: left-multiplying by a letter prepends it to every word.
p = 6
assert beta_expansion(p + 2) == G0 * beta_expansion(p) + G1 * beta_expansion(p + 1)
print("alpha_5 =", alpha_expansion(5))

# %%
# Substituting matrices for the letters gives the same operator as the
# numeric recurrence.
rng = np.random.default_rng(0)
L0, L1 = rng.normal(size=(2, 3, 3))
x = rng.normal(size=3)
words = evaluate_word_sum(beta_expansion(7), (L0, L1), x)
numeric = beta_operators(L0, L1, 7)[7] @ x
print("max difference:", np.max(np.abs(words - numeric)))
