"""Second-order linear difference equations with noncommuting operator coefficients.

Solves ``Y_{p+2} = L0 Y_p + L1 Y_{p+1} + phi_{p+1}`` with ``Y_0 = A``,
``Y_1 = B`` over dense matrices, translation operators or the Volterra
integral operator, and cross-checks the resolutive formula against the plain
recurrence, the word expansions, companion-matrix powers and generating
functions.
"""

from .errors import (
    DegreeOverflowError,
    DimensionError,
    NotCommutingError,
    NotNilpotentError,
    OpseqError,
    ResourceLimitError,
    SingularOperatorError,
    SquareRootUnavailableError,
)
from .words import (
    EMPTY,
    G0,
    G1,
    Word,
    WordSum,
    alpha_expansion,
    beta_expansion,
    evaluate_word_sum,
    symmetrized_words,
)
from .matrix import (
    Spectrum,
    as_matrix,
    chebyshev_U,
    eigen,
    identity,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sqrt,
)
from .solver import (
    Problem,
    SolutionSequence,
    alpha_operators,
    beta_operators,
    chebyshev_operators,
    relative_deviation,
    solve_closed_form,
    solve_commuting_chebyshev,
    solve_iterative,
    solve_words_oracle,
)
from .companion import (
    BlockMatrix2x2,
    companion_matrix,
    companion_power,
    companion_residual,
    genfun_alpha_check,
    genfun_beta_check,
    genfun_chebyshev_check,
)

__version__ = "0.1.0"
