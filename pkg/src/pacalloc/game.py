"""Voluntary-contribution game over sample counts.

Each agent pledges a sample count, pays cost times count, and receives
benefit one exactly when the pooled sample meets its own delta bar
under every candidate truth. Because the benefit is a monotone 0/1
function of the agent's own count (others fixed), best responses and
equilibria reduce to comparing two candidate counts per agent: zero
and the minimal count that meets the bar.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .exact import exact_min_cost
from .instances import (
    ContributionVector,
    Instance,
    exceeds_epsilon,
    make_instance,
)
from .oracles import (
    _cache,
    agent_requirement_met,
    individual_sample_complexity,
)

DEFAULT_ENUM_CAP = 1_000_000

UTIL_TOL = 1e-9


def enum_cap(cap=None) -> int:
    """Resolve the strategy-box cap: argument, ENUM_CAP env, or default."""
    if cap is not None:
        return int(cap)
    return int(os.environ.get("ENUM_CAP", DEFAULT_ENUM_CAP))


@dataclass(frozen=True)
class GameOutcome:
    """Equilibrium analysis results; unfilled fields stay None."""

    pure_ne: tuple
    best_ne_cost: float | None = None
    opt_cost: float | None = None
    pos: float | None = None
    br_trace: tuple | None = None
    note: str = ""


def individual_caps(instance: Instance) -> tuple:
    """Solo sample complexity of every agent; the strategy box bounds.

    Contributing more than the solo complexity is strictly dominated:
    the bar is already met at that count no matter what others do, so
    extra samples only add cost.
    """
    return tuple(
        individual_sample_complexity(instance, i) for i in range(instance.num_agents)
    )


def minimal_meeting_count(instance: Instance, counts, agent_index: int) -> int:
    """Smallest own count meeting the agent's bar, others held fixed."""
    i = int(agent_index)
    counts = tuple(int(x) for x in counts)
    others = counts[:i] + counts[i + 1 :]
    memo = _cache(instance).setdefault("meeting_count", {})
    key = (i, others)
    if key in memo:
        return memo[key]
    vec = ContributionVector(counts)
    hi = individual_sample_complexity(instance, i)

    def met(x: int) -> bool:
        return agent_requirement_met(instance, vec.replace(i, x), i)

    if met(0):
        memo[key] = 0
        return 0
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if met(mid):
            hi = mid
        else:
            lo = mid
    memo[key] = hi
    return hi


def utility(instance: Instance, counts, agent_index: int) -> float:
    """Benefit indicator minus contribution cost for one agent."""
    i = int(agent_index)
    vec = ContributionVector(tuple(int(x) for x in counts))
    met = agent_requirement_met(instance, vec, i)
    return (1.0 if met else 0.0) - instance.agents[i].cost * vec[i]


def best_response(instance: Instance, counts, agent_index: int) -> int:
    """Utility-maximizing own count, ties broken toward the smaller one.

    Only two candidates matter: zero, and the minimal count x* that
    meets the bar. Counts in between pay without benefit; counts above
    x* pay more for the same benefit.
    """
    i = int(agent_index)
    x_star = minimal_meeting_count(instance, counts, i)
    if x_star == 0:
        return 0
    gain = 1.0 - instance.agents[i].cost * x_star
    return x_star if gain > UTIL_TOL else 0


def _is_equilibrium(instance: Instance, profile: tuple, costs) -> bool:
    for i in range(len(profile)):
        x_star = minimal_meeting_count(instance, profile, i)
        have = (1.0 if profile[i] >= x_star else 0.0) - costs[i] * profile[i]
        best = max(
            1.0 if x_star == 0 else 0.0,
            1.0 - costs[i] * x_star,
        )
        if have + UTIL_TOL < best:
            return False
    return True


def enumerate_pure_ne(instance: Instance, cap=None) -> GameOutcome:
    """All pure Nash equilibria inside the undominated strategy box."""
    caps = individual_caps(instance)
    size = math.prod(c + 1 for c in caps)
    limit = enum_cap(cap)
    if size > limit:
        raise CapacityError(
            f"strategy box holds {size} profiles, above the cap of {limit}; "
            "raise ENUM_CAP or use best_response_dynamics"
        )
    costs = instance.costs()
    found = []
    for profile in itertools.product(*(range(c + 1) for c in caps)):
        if _is_equilibrium(instance, profile, costs):
            found.append(ContributionVector(profile))
    best = min((v.total_cost(instance) for v in found), default=None)
    return GameOutcome(pure_ne=tuple(found), best_ne_cost=best)


def price_of_stability(instance: Instance, cap=None) -> GameOutcome:
    """Cheapest equilibrium cost over the exact optimum cost.

    Returns 1.0 when both are zero; pos stays None with an explanatory
    note when no pure equilibrium exists.
    """
    outcome = enumerate_pure_ne(instance, cap)
    opt = exact_min_cost(instance, "pac")
    opt_cost = opt.total_cost(instance)
    if not outcome.pure_ne:
        return GameOutcome(
            pure_ne=(),
            best_ne_cost=None,
            opt_cost=opt_cost,
            pos=None,
            note="no pure Nash equilibrium; ratio undefined",
        )
    best = outcome.best_ne_cost
    if opt_cost <= 0.0:
        pos = 1.0
        note = "zero-cost optimum; ratio fixed at one"
    else:
        pos = best / opt_cost
        note = ""
    return GameOutcome(
        pure_ne=outcome.pure_ne,
        best_ne_cost=best,
        opt_cost=opt_cost,
        pos=pos,
        note=note,
    )


def best_response_dynamics(
    instance: Instance, start=None, max_sweeps: int = 1000
) -> GameOutcome:
    """Round-robin better-reply walk with explicit cycle detection.

    Sweeps agents in index order, replacing each count with its best
    response. A sweep with no change is a pure equilibrium. Profiles at
    sweep boundaries are remembered; revisiting one means the walk
    cycles and is reported as such rather than timed out.
    """
    k = instance.num_agents
    if start is None:
        profile = (0,) * k
    else:
        profile = tuple(int(x) for x in start)
        if len(profile) != k or any(x < 0 for x in profile):
            raise ValidationError("start profile must be k non-negative counts")
    trace = []
    visited = {profile}
    for _ in range(max_sweeps):
        changed = False
        for i in range(k):
            new = best_response(instance, profile, i)
            if new != profile[i]:
                trace.append((i, profile[i], new))
                profile = profile[:i] + (new,) + profile[i + 1 :]
                changed = True
        if not changed:
            vec = ContributionVector(profile)
            return GameOutcome(
                pure_ne=(vec,),
                best_ne_cost=vec.total_cost(instance),
                br_trace=tuple(trace),
                note="converged",
            )
        if profile in visited:
            return GameOutcome(
                pure_ne=(),
                br_trace=tuple(trace),
                note="cycle detected",
            )
        visited.add(profile)
    return GameOutcome(
        pure_ne=(),
        br_trace=tuple(trace),
        note="sweep limit reached without convergence",
    )


# ---------------------------------------------------------------------------
# named constructions


def pos_instance(epsilon: float, delta: float) -> Instance:
    """Two-agent family whose stability gap grows like log(1/epsilon).

    One agent spreads mass uniformly over n sparse points, each just
    heavy enough that missing it is a failure, so alone it must nearly
    collect all n coupons. The other agent is cheap to satisfy but its
    rare point sits inside every one of the first agent's rival
    regions, so a modest joint plan is far cheaper than the solo one.
    """
    epsilon = float(epsilon)
    delta = float(delta)
    if not 0.0 < epsilon < 0.5:
        raise ValidationError("epsilon must lie strictly between 0 and 0.5")
    if not 0.0 < delta < 1.0:
        raise ValidationError("delta must lie strictly between 0 and 1")
    n = int(math.ceil(1.0 / epsilon)) - 1
    while n >= 1 and not exceeds_epsilon(1.0 / n, epsilon):
        n -= 1
    if n < 1 or 2.0 * epsilon * n < 1.0 - 1e-9:
        raise ValidationError(
            "no sparse-point count n with 1/(2 epsilon) <= n and 1/n > epsilon"
        )
    size = n + 2
    y, z = n, n + 1
    hyps = [np.zeros(size, dtype=np.int64)]
    for i in range(n):
        h = np.zeros(size, dtype=np.int64)
        h[i] = 1
        h[z] = 1
        hyps.append(h)
    spread = np.zeros(size)
    spread[:n] = 1.0 / n
    rare = np.zeros(size)
    rare[y] = 1.0 - epsilon
    rare[z] = epsilon
    cap = math.ceil(math.log((n + 1) / delta) / epsilon)
    cost_a = 1.0 / (2.0 * cap)
    return make_instance(
        hyps, [spread, rare], epsilon, delta, costs=[cost_a, cost_a / 20.0]
    )


def nonexistence_instance() -> Instance:
    """Three-agent cycle with no pure Nash equilibrium.

    Each agent can cover the next agent's needs but not its own alone
    being covered; chasing best responses around the cycle never
    settles. The full labeling class over three points with epsilon 1/3
    and delta 2/3 realizes the cycle with one-sample strategies.
    """
    hyps = [np.array(bits, dtype=np.int64) for bits in itertools.product((0, 1), repeat=3)]
    dists = [
        np.array([1.0 / 3.0, 2.0 / 3.0, 0.0]),
        np.array([0.0, 1.0 / 3.0, 2.0 / 3.0]),
        np.array([2.0 / 3.0, 0.0, 1.0 / 3.0]),
    ]
    return make_instance(
        hyps, dists, 1.0 / 3.0, 2.0 / 3.0, costs=[0.5, 0.5, 0.5]
    )


def free_rider_instance(epsilon: float = 0.1, cost: float = 0.1) -> Instance:
    """Two symmetric agents where lone equilibria overpay.

    Each agent is rare where the other is common. Together one sample
    each meets both bars, but a lone contributor needs several times
    that, and both lone profiles are also equilibria.
    """
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 0.5:
        raise ValidationError("epsilon must lie strictly between 0 and 0.5")
    delta = 1.0 - (1.0 - 2.0 * epsilon) ** 2
    hyps = [np.array(bits, dtype=np.int64) for bits in itertools.product((0, 1), repeat=2)]
    dists = [
        np.array([1.0 - 2.0 * epsilon, 2.0 * epsilon]),
        np.array([2.0 * epsilon, 1.0 - 2.0 * epsilon]),
    ]
    return make_instance(hyps, dists, epsilon, delta, costs=[cost, cost])
