"""Explicit Gronwall-type bounds on finite two-variable time scales.

Thin wrapper over the C++ core: exact delta-calculus operations, the four
explicit bounds, the Volterra solver, and the verification harness.
"""

from ._core import (
    HypothesisCheck,
    TimeScale,
    apriori_bound,
    bound_affine,
    bound_const,
    bound_factor,
    bound_lipschitz,
    canonical_form,
    converge,
    cumulative_double,
    cumulative_triple,
    eval_expression,
    fuzz,
    picard_iterate,
    residual_sup,
    scenario_digest,
    solve_exact,
    ts_exp_axis1,
    two_solution_bound,
    verify_file,
    verify_json,
    zero_section,
)

__all__ = [
    "HypothesisCheck",
    "TimeScale",
    "apriori_bound",
    "bound_affine",
    "bound_const",
    "bound_factor",
    "bound_lipschitz",
    "canonical_form",
    "converge",
    "cumulative_double",
    "cumulative_triple",
    "eval_expression",
    "fuzz",
    "picard_iterate",
    "residual_sup",
    "scenario_digest",
    "solve_exact",
    "ts_exp_axis1",
    "two_solution_bound",
    "verify_file",
    "verify_json",
    "zero_section",
]
