"""Sample allocation toolkit for groups of learners sharing one dataset.

The package bundles exact feasibility oracles over finite hypothesis
classes, a covering-LP planner with rounding guarantees, a best-effort
exact search, a contribution game analyzer, payment rules with
strategyproofness audits, and a set-cover translation layer.
"""

from .errors import (
    CapacityError,
    SearchInfeasibleError,
    SolverError,
    ValidationError,
)
from .instances import (
    EPS_SLACK,
    MASS_TOL,
    AgentSpec,
    ContributionVector,
    Domain,
    Hypothesis,
    HypothesisClass,
    Instance,
    disagreement_mass,
    disagreement_region,
    exceeds_epsilon,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    make_instance,
    save_instance,
    unacceptable_hypotheses,
    within_delta,
)
from .oracles import (
    FailureProbability,
    agent_requirement_met,
    expected_erm_error,
    expected_feasible,
    individual_sample_complexity,
    pac_failure_probability,
    pac_feasible,
    requirement_met,
    survival_probability,
    worst_expected_error,
)
from .montecarlo import (
    MonteCarloEstimate,
    monte_carlo_estimates,
    monte_carlo_expected_error,
    monte_carlo_failure_probability,
    monte_carlo_pac_failure,
)
from .lp import LinearProgram, LpSolution, solve_linear_program
from .planner import (
    approximation_ratio_bound,
    build_expected_lp,
    build_pac_lp,
    ceil_counts,
    expected_to_pac_scaling,
    gamma_cover,
    infinite_class_pipeline,
    solve_expected_allocation,
    solve_pac_allocation,
)
from .exact import approximation_ratio, default_cap, exact_min_cost
from .game import (
    GameOutcome,
    best_response,
    best_response_dynamics,
    enumerate_pure_ne,
    free_rider_instance,
    individual_caps,
    minimal_meeting_count,
    nonexistence_instance,
    pos_instance,
    price_of_stability,
    utility,
)
from .mechanism import (
    AuditReport,
    PaymentRule,
    UniquenessReport,
    WitnessReport,
    check_pwyc_uniqueness,
    clarke_pivot_terms,
    obliviousness_witness,
    payment_for,
    pwyc_payment,
    strategyproofness_audit,
    vcg_payment,
)
from .reduction import (
    SetCoverInstance,
    brute_force_set_cover,
    consistent_hypotheses,
    load_set_cover,
    min_eliminating_sample_count,
    save_set_cover,
    set_cover_to_pac,
)

solve_lp = solve_linear_program

__version__ = "0.1.0"

__all__ = [
    "AgentSpec",
    "AuditReport",
    "CapacityError",
    "ContributionVector",
    "Domain",
    "EPS_SLACK",
    "FailureProbability",
    "GameOutcome",
    "Hypothesis",
    "HypothesisClass",
    "Instance",
    "LinearProgram",
    "LpSolution",
    "MASS_TOL",
    "MonteCarloEstimate",
    "PaymentRule",
    "SearchInfeasibleError",
    "SetCoverInstance",
    "SolverError",
    "UniquenessReport",
    "ValidationError",
    "WitnessReport",
    "agent_requirement_met",
    "approximation_ratio",
    "approximation_ratio_bound",
    "best_response",
    "best_response_dynamics",
    "brute_force_set_cover",
    "build_expected_lp",
    "build_pac_lp",
    "ceil_counts",
    "check_pwyc_uniqueness",
    "clarke_pivot_terms",
    "consistent_hypotheses",
    "default_cap",
    "disagreement_mass",
    "disagreement_region",
    "enumerate_pure_ne",
    "exact_min_cost",
    "exceeds_epsilon",
    "expected_erm_error",
    "expected_feasible",
    "expected_to_pac_scaling",
    "free_rider_instance",
    "gamma_cover",
    "individual_caps",
    "individual_sample_complexity",
    "infinite_class_pipeline",
    "instance_from_dict",
    "instance_to_dict",
    "load_instance",
    "load_set_cover",
    "make_instance",
    "min_eliminating_sample_count",
    "minimal_meeting_count",
    "monte_carlo_estimates",
    "monte_carlo_expected_error",
    "monte_carlo_failure_probability",
    "monte_carlo_pac_failure",
    "nonexistence_instance",
    "obliviousness_witness",
    "pac_failure_probability",
    "pac_feasible",
    "payment_for",
    "pos_instance",
    "price_of_stability",
    "pwyc_payment",
    "requirement_met",
    "save_instance",
    "save_set_cover",
    "set_cover_to_pac",
    "solve_expected_allocation",
    "solve_lp",
    "solve_linear_program",
    "solve_pac_allocation",
    "strategyproofness_audit",
    "survival_probability",
    "unacceptable_hypotheses",
    "utility",
    "vcg_payment",
    "within_delta",
    "worst_expected_error",
]
