"""Covering-LP planners that turn an instance into a contribution vector.

Eliminating a rival hypothesis is a coverage act: a draw from agent i
kills the rival with chance equal to i's disagreement mass. Taking logs
of survival chances turns "drive every bad rival's survival below the
bar" into a linear covering program over fractional sample counts. The
planners here build that program, solve it with the simplex code in
lp, and round the solution up to integers.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SolverError, ValidationError
from .instances import (
    ContributionVector,
    HypothesisClass,
    Instance,
    exceeds_epsilon,
)
from .lp import LinearProgram, solve_linear_program

# Survival bases are clamped away from zero before the log so that a
# mass-one region yields a large finite coefficient instead of inf.
MASS_CLAMP = 1e-12


def _pair_masses(instance: Instance):
    """Per-agent disagreement mass of every unordered hypothesis pair.

    Returns (pairs, masses): pairs is a list of (a, b) index tuples with
    a < b in lexicographic order, masses has shape (len(pairs), k).
    """
    labels = instance.hypothesis_class.label_matrix()
    dist = instance.distribution_matrix()
    pairs = []
    rows = []
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            region = labels[a] != labels[b]
            pairs.append((a, b))
            rows.append(dist[:, region].sum(axis=1))
    masses = np.array(rows) if rows else np.zeros((0, instance.num_agents))
    return pairs, masses


def _log_rates(mass_rows: np.ndarray) -> np.ndarray:
    """Elimination rate -log(1 - mass) per draw, clamped at mass one."""
    return -np.log1p(-np.minimum(mass_rows, 1.0 - MASS_CLAMP))


def build_pac_lp(instance: Instance) -> LinearProgram:
    """Covering LP whose feasible points drive every bad pair below delta.

    One row per unordered hypothesis pair whose disagreement mass
    exceeds epsilon for at least one agent; its coefficient for agent i
    is -log(1 - mass_i) and the right side is log(H / delta), so any
    feasible vector leaves each such pair surviving with chance at most
    delta / H and a union bound over rivals closes the argument.
    """
    pairs, masses = _pair_masses(instance)
    keep = [
        p
        for p in range(len(pairs))
        if any(
            exceeds_epsilon(float(masses[p, i]), instance.epsilon)
            for i in range(instance.num_agents)
        )
    ]
    lhs = _log_rates(masses[keep]) if keep else np.zeros((0, instance.num_agents))
    rhs = np.full(len(keep), math.log(instance.num_hypotheses / instance.delta))
    labels = tuple(pairs[p] for p in keep)
    return LinearProgram(instance.costs(), lhs, rhs, labels)


def build_expected_lp(instance: Instance) -> LinearProgram:
    """Covering LP for the expected-error objective.

    Pairs enter when some agent sees mass above epsilon / 2. The right
    side scales with the pair's largest per-agent mass a: requiring
    survival below epsilon / (2 H a) makes the heavy rivals' total
    expected contribution at most epsilon / 2, and rivals below the
    epsilon / 2 threshold contribute at most epsilon / 2 more because
    only the largest surviving one counts.
    """
    pairs, masses = _pair_masses(instance)
    half = instance.epsilon / 2.0
    keep = []
    rhs = []
    for p in range(len(pairs)):
        a = float(masses[p].max())
        if exceeds_epsilon(a, half):
            keep.append(p)
            rhs.append(
                math.log(2.0 * instance.num_hypotheses * a / instance.epsilon)
            )
    lhs = _log_rates(masses[keep]) if keep else np.zeros((0, instance.num_agents))
    labels = tuple(pairs[p] for p in keep)
    return LinearProgram(instance.costs(), lhs, np.array(rhs), labels)


def ceil_counts(x) -> tuple:
    """Round a fractional allocation up to integers, absorbing float fuzz."""
    arr = np.asarray(x, dtype=float)
    return tuple(int(v) for v in np.maximum(np.ceil(arr - 1e-9), 0).astype(np.int64))


def _solve_rounded(instance: Instance, lp: LinearProgram) -> ContributionVector:
    solution = solve_linear_program(lp)
    if solution.status != "optimal":
        raise SolverError(f"covering LP unexpectedly {solution.status}")
    return ContributionVector(ceil_counts(solution.x))


def solve_pac_allocation(instance: Instance) -> ContributionVector:
    """Rounded LP plan meeting every agent's delta bar."""
    return _solve_rounded(instance, build_pac_lp(instance))


def solve_expected_allocation(instance: Instance) -> ContributionVector:
    """Rounded LP plan driving every expected error below epsilon."""
    return _solve_rounded(instance, build_expected_lp(instance))


def approximation_ratio_bound(instance: Instance) -> float:
    """Guaranteed ratio between the LP optimum and the exact optimum.

    Scaling any feasible integer vector by 1 + log(H) / log(1 / delta)
    pushes each pair's survival from delta down to delta / H, which is
    LP-feasible, so the LP value is within this factor of optimal.
    """
    return 1.0 + math.log(instance.num_hypotheses) / math.log(1.0 / instance.delta)


def expected_to_pac_scaling(instance: Instance) -> int:
    """Multiplier turning an expected-error plan into a delta-bar plan.

    At an expected-error optimum every bad rival survives with chance
    at most epsilon / (4 a) < 1/2, so t-fold repetition drives survival
    below epsilon / (2 H a) once 2^(t-1) reaches H; the base-2 log is
    what makes the geometric decay argument close.
    """
    return int(math.ceil(math.log2(2 * instance.num_hypotheses)))


def gamma_cover(hypothesis_class: HypothesisClass, agents, gamma: float) -> HypothesisClass:
    """Greedy subclass covering every hypothesis within gamma per agent.

    Covering at radius gamma / k under the uniform mixture of the k
    agent distributions guarantees radius gamma under each individual
    distribution, since each is pointwise at most k times the mixture.
    """
    gamma = float(gamma)
    if not gamma > 0.0:
        raise ValidationError("cover radius gamma must be positive")
    agents = tuple(agents)
    if not agents:
        raise ValidationError("gamma_cover needs at least one agent")
    mixture = np.mean([a.distribution for a in agents], axis=0)
    radius = gamma / len(agents)
    labels = hypothesis_class.label_matrix()
    reps: list[int] = []
    for j in range(len(labels)):
        covered = any(
            float(mixture[labels[j] != labels[r]].sum()) <= radius + 1e-12
            for r in reps
        )
        if not covered:
            reps.append(j)
    return HypothesisClass(tuple(hypothesis_class[r] for r in reps))


def infinite_class_pipeline(
    instance: Instance,
    gamma=None,
    delta_prime=None,
    delta_double_prime=None,
    scale_d=None,
) -> ContributionVector:
    """Cover the class, plan on the cover, then repeat the plan.

    The pipeline discretizes the hypothesis class to a gamma-cover,
    solves the covering LP on the subclass at a sharpened confidence
    delta_prime, and multiplies the rounded plan by an integer factor
    large enough that independent repetitions also absorb the capacity
    term scale_d and the residual confidence delta_double_prime.
    """
    k = instance.num_agents
    h = instance.num_hypotheses
    if scale_d is None:
        scale_d = math.ceil(math.log2(h)) if h > 1 else 0
    scale_d = float(scale_d)
    if not (math.isfinite(scale_d) and scale_d >= 0.0):
        raise ValidationError("scale_d must be a finite non-negative real")
    costs = instance.costs()
    if gamma is None:
        gamma = (
            float(costs.min())
            * instance.epsilon
            * instance.delta
            / (float(costs.max()) * k * (scale_d + math.log(1.0 / instance.delta)))
        )
    cover = gamma_cover(instance.hypothesis_class, instance.agents, gamma)
    h_bar = len(cover)
    if delta_double_prime is None:
        delta_double_prime = instance.delta / (4.0 * h_bar)
    if not 0.0 < float(delta_double_prime) < 1.0:
        raise ValidationError("delta_double_prime must lie in (0, 1)")
    if delta_prime is None:
        delta_prime = instance.delta / (
            8.0 * (scale_d + math.log(2.0 * h_bar / instance.delta))
        )
    if not 0.0 < float(delta_prime) < 1.0:
        raise ValidationError("delta_prime must lie in (0, 1)")
    sub = Instance(
        domain=instance.domain,
        hypothesis_class=cover,
        agents=instance.agents,
        epsilon=instance.epsilon,
        delta=float(delta_prime),
    )
    base = solve_pac_allocation(sub)
    repeat = int(math.ceil(scale_d + math.log(1.0 / float(delta_double_prime))))
    repeat = max(repeat, 1)
    return ContributionVector(tuple(repeat * int(v) for v in base))
