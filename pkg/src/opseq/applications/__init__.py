"""Worked backends: index-2 nilpotent matrices, translations and the Volterra operator."""

from .nilpotent import (
    check_index2,
    nilpotent_alpha,
    nilpotent_beta,
    random_index2_pair,
    solve_nilpotent,
)
from .shift import (
    BASE_FUNCTIONS,
    ShiftExpansion,
    ShiftOperator,
    ShiftSolution,
    binomial_shift_value,
    exp_pair_value,
    recurrence_callables,
    shift_operators,
    shift_problem,
    solve_shift_problem,
)
from .volterra import (
    PolyFunction,
    VolterraOperator,
    VolterraSolution,
    cauchy_kernel,
    explicit_volterra_value,
    solve_volterra_problem,
    volterra_alpha_operator,
    volterra_beta_operator,
    volterra_power,
    volterra_problem,
)
