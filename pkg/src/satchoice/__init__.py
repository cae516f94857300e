"""Achlioptas processes for random k-SAT.

Generate formulas where each clause is chosen on-line among ``t`` random
candidates, run biased unit-clause heuristics and exact solvers on them,
and compute the critical densities predicted by the density ODEs and the
closed-form 2-SAT and subcube calculators.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .analysis import (
    PositiveProfile,
    Trajectory,
    branching_response,
    critical_alpha,
    integrate_bsc,
    integrate_buc,
    max_eigenvalue,
    positive_profile,
)
from .choice import (
    ChoiceRule,
    GenConfig,
    choose,
    generate,
    random_clause,
    reduce_formula,
    reduce_most_positive,
    subformula_in_U,
)
from .exact import ImplicationGraph, SolveResult, Status, dpll_sat, two_sat_scc
from .formula import (
    DimacsError,
    Evaluation,
    Formula,
    emit_dimacs,
    evaluate,
    parse_dimacs,
    positive_count,
)
from .heuristics import ClauseCensus, HeuristicResult, Outcome, census, run_bsc, run_buc, run_sc, run_uc
from .sweep import SweepConfig, SweepResult, estimate_transition, profile_check, run_sweep
from .thresholds import choice_two_sat_alpha, gamma, min_choices_to_lower, optimal_a, two_sat_threshold

__all__ = [
    "__version__",
    "BACKEND",
    "PositiveProfile",
    "Trajectory",
    "branching_response",
    "critical_alpha",
    "integrate_bsc",
    "integrate_buc",
    "max_eigenvalue",
    "positive_profile",
    "ChoiceRule",
    "GenConfig",
    "choose",
    "generate",
    "random_clause",
    "reduce_formula",
    "reduce_most_positive",
    "subformula_in_U",
    "ImplicationGraph",
    "SolveResult",
    "Status",
    "dpll_sat",
    "two_sat_scc",
    "DimacsError",
    "Evaluation",
    "Formula",
    "emit_dimacs",
    "evaluate",
    "parse_dimacs",
    "positive_count",
    "ClauseCensus",
    "HeuristicResult",
    "Outcome",
    "census",
    "run_bsc",
    "run_buc",
    "run_sc",
    "run_uc",
    "SweepConfig",
    "SweepResult",
    "estimate_transition",
    "profile_check",
    "run_sweep",
    "choice_two_sat_alpha",
    "gamma",
    "min_choices_to_lower",
    "optimal_a",
    "two_sat_threshold",
]
