"""Exact cheapest-feasible search over a box of contribution vectors.

Feasibility is monotone: adding samples never hurts. Best-first search
ordered by cost therefore returns a true optimum the moment it pops a
feasible vector, and the box cap only has to be large enough that some
feasible vector lies inside.
"""

from __future__ import annotations

import heapq
import math

from .errors import SearchInfeasibleError, ValidationError
from .instances import ContributionVector, Instance
from .oracles import expected_feasible, individual_sample_complexity, pac_feasible
from .planner import solve_expected_allocation, solve_pac_allocation

OBJECTIVES = ("pac", "expected")


def default_cap(instance: Instance, objective: str = "pac") -> int:
    """Box size guaranteed to contain a feasible vector.

    For the delta-bar objective the vector where every agent brings its
    own solo sample complexity is feasible, so the largest of those
    suffices. For the expected objective, m draws from an agent leave
    its expected error below (H - 1) / (e m) regardless of the others,
    which gives a closed-form per-agent ceiling.
    """
    if objective == "pac":
        return max(
            individual_sample_complexity(instance, i)
            for i in range(instance.num_agents)
        )
    if objective == "expected":
        if instance.num_hypotheses == 1:
            return 0
        return int(
            math.ceil((instance.num_hypotheses - 1) / (math.e * instance.epsilon))
        )
    raise ValidationError(f"objective must be one of {OBJECTIVES}")


def exact_min_cost(
    instance: Instance, objective: str = "pac", cap=None, feasible=None
) -> ContributionVector:
    """Cheapest feasible contribution vector within the box [0, cap]^k.

    Vectors are explored in order of total cost with lexicographic
    tie-breaking, so the first feasible one is the cheapest and, among
    equal-cost optima, the lexicographically smallest. A custom
    feasibility predicate replaces the objective's oracle when given;
    it must be monotone for the early exit to remain exact.
    """
    if objective not in OBJECTIVES:
        raise ValidationError(f"objective must be one of {OBJECTIVES}")
    if feasible is None:
        feasible = pac_feasible if objective == "pac" else expected_feasible
    if cap is None:
        cap = default_cap(instance, objective)
    cap = int(cap)
    if cap < 0:
        raise ValidationError("cap must be a non-negative integer")
    k = instance.num_agents
    costs = instance.costs()
    start = (0,) * k
    heap = [(0.0, start)]
    seen = {start}
    while heap:
        cost, counts = heapq.heappop(heap)
        if feasible(instance, ContributionVector(counts)):
            return ContributionVector(counts)
        for i in range(k):
            if counts[i] < cap:
                child = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
                if child not in seen:
                    seen.add(child)
                    heapq.heappush(heap, (cost + float(costs[i]), child))
    raise SearchInfeasibleError(
        f"no feasible contribution vector in the box [0, {cap}]^{k}"
    )


def approximation_ratio(instance: Instance, objective: str = "pac") -> float:
    """Cost of the rounded LP plan divided by the exact optimum cost."""
    if objective == "pac":
        planned = solve_pac_allocation(instance)
    elif objective == "expected":
        planned = solve_expected_allocation(instance)
    else:
        raise ValidationError(f"objective must be one of {OBJECTIVES}")
    best = exact_min_cost(instance, objective)
    num = planned.total_cost(instance)
    den = best.total_cost(instance)
    if den <= 0.0:
        return 1.0 if num <= 0.0 else math.inf
    return num / den
