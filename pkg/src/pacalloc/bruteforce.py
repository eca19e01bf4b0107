"""Definitional reference implementations used to cross-check fast solvers.

Everything here enumerates outcomes directly from first principles, with
no collapsing or pruning, so it only runs on tiny inputs. Tests freeze
values produced by these functions and hold the production code to them.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import CapacityError
from .instances import (
    Instance,
    disagreement_mass,
    disagreement_region,
    unacceptable_hypotheses,
    within_delta,
)

# Hard ceiling on domain**draws for the outcome walks below.
ENUM_LIMIT = 2_000_000


def _iter_datasets(instance: Instance, counts):
    """Yield (probability, hit_mask) over every possible combined dataset.

    Each agent i contributes counts[i] iid draws from its distribution;
    hit_mask marks which domain points appear at least once overall.
    """
    n = instance.domain.size
    draws = []
    for i, m in enumerate(counts):
        draws.extend([i] * int(m))
    total = len(draws)
    if n ** total > ENUM_LIMIT:
        raise CapacityError(
            f"{n}**{total} outcomes exceeds the brute force limit of {ENUM_LIMIT}"
        )
    dists = [instance.agents[i].distribution for i in draws]
    for combo in itertools.product(range(n), repeat=total):
        p = 1.0
        for dist, x in zip(dists, combo):
            p *= float(dist[x])
            if p == 0.0:
                break
        if p == 0.0:
            continue
        hit = np.zeros(n, dtype=bool)
        hit[list(combo)] = True
        yield p, hit


def brute_force_failure_probability(
    instance: Instance, counts, target_index: int, agent_index: int
) -> float:
    """Failure chance for one (truth, agent) pair by full outcome enumeration.

    A dataset is a failure when some hypothesis consistent with every
    sampled point still has disagreement mass strictly above epsilon for
    the agent; worst-case tie-breaking would then pick it.
    """
    target = instance.hypothesis_class[target_index]
    bad = unacceptable_hypotheses(instance, target_index, agent_index)
    if not bad:
        return 0.0
    bad_masks = [disagreement_region(target, instance.hypothesis_class[j]) for j in bad]
    fail = 0.0
    for p, hit in _iter_datasets(instance, counts):
        if any(not (mask & hit).any() for mask in bad_masks):
            fail += p
    return fail


def brute_force_feasible(instance: Instance, counts) -> bool:
    """Whether counts meets the (epsilon, delta) requirement for every pair."""
    for t in range(instance.num_hypotheses):
        for i in range(instance.num_agents):
            fail = brute_force_failure_probability(instance, counts, t, i)
            if not within_delta(fail, instance.delta):
                return False
    return True


def brute_force_expected_error(
    instance: Instance, counts, target_index: int, agent_index: int
) -> float:
    """Expected worst-case error of the consistent pick, by full enumeration.

    For each dataset the realized error is the largest disagreement mass
    (for the agent) among hypotheses consistent with the data. The truth
    itself is always consistent, so the error is never negative.
    """
    target = instance.hypothesis_class[target_index]
    dist = instance.agents[agent_index].distribution
    others = []
    for j, h in enumerate(instance.hypothesis_class):
        if j == target_index:
            continue
        others.append((disagreement_region(target, h), disagreement_mass(dist, target, h)))
    if not others:
        return 0.0
    total = 0.0
    for p, hit in _iter_datasets(instance, counts):
        worst = 0.0
        for mask, mass in others:
            if mass > worst and not (mask & hit).any():
                worst = mass
        total += p * worst
    return total


def brute_force_min_cost(instance: Instance, cap: int, feasible=None):
    """Cheapest feasible counts vector in the box [0, cap]^k, by full scan.

    Ties break toward the lexicographically smallest vector. `feasible`
    defaults to the definitional check above; pass the fast oracle when
    the box is too large for that. Returns None when nothing in the box
    works.
    """
    if feasible is None:
        feasible = lambda counts: brute_force_feasible(instance, counts)
    k = instance.num_agents
    costs = instance.costs()
    best = None
    for combo in itertools.product(range(int(cap) + 1), repeat=k):
        if not feasible(combo):
            continue
        value = float(np.dot(costs, combo))
        if best is None or value < best[0] - 1e-12:
            best = (value, combo)
    return best


def brute_force_lp_minimize(costs, lhs, rhs, tol=1e-9):
    """Minimize costs @ x subject to lhs @ x >= rhs and x >= 0.

    Enumerates basic solutions (candidate vertices), so dimensions must
    be tiny. Returns (x, value) at an optimal vertex, or None when no
    vertex is feasible. Intended purely as a test oracle.
    """
    costs = np.asarray(costs, dtype=float)
    lhs = np.asarray(lhs, dtype=float).reshape(-1, costs.shape[0])
    rhs = np.asarray(rhs, dtype=float)
    nvar = costs.shape[0]
    rows = list(lhs) + list(np.eye(nvar))
    offs = list(rhs) + [0.0] * nvar
    best = None
    for picks in itertools.combinations(range(len(rows)), nvar):
        a = np.array([rows[i] for i in picks])
        b = np.array([offs[i] for i in picks])
        try:
            x = np.linalg.solve(a, b)
        except np.linalg.LinAlgError:
            continue
        if (x < -tol).any():
            continue
        if lhs.size and (lhs @ x < rhs - tol).any():
            continue
        value = float(costs @ x)
        if best is None or value < best[1] - 1e-12:
            best = (x, value)
    return best


def brute_force_set_cover(universe_size: int, subsets):
    """Smallest subfamily covering {0, ..., universe_size - 1}.

    Returns (size, chosen_indices) or None when even the full family
    does not cover.
    """
    full = set(range(universe_size))
    sets = [set(s) for s in subsets]
    for r in range(len(sets) + 1):
        for picks in itertools.combinations(range(len(sets)), r):
            covered = set()
            for i in picks:
                covered |= sets[i]
            if covered >= full:
                return r, list(picks)
    return None


def coupon_collector_miss_probability(n: int, m: int) -> float:
    """Chance some face of a fair n-sided die never shows in m rolls."""
    total = 0.0
    for j in range(1, n + 1):
        total += (-1) ** (j + 1) * math.comb(n, j) * (1 - j / n) ** m
    return total
