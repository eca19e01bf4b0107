"""Seeded random generators for instances, counts, and covering problems.

Shared by the test-suite and the self-check command so both exercise
the same distribution of shapes: a few agents, single-digit domains
and classes, occasional zero-mass points, and costs spread over an
order of magnitude.
"""

from __future__ import annotations

import numpy as np

from .instances import AgentSpec, Instance, make_instance
from .oracles import individual_sample_complexity
from .reduction import SetCoverInstance


def random_distribution(rng, size: int, allow_zero: bool = True) -> np.ndarray:
    """Dirichlet draw, sometimes with a few coordinates zeroed out."""
    probs = rng.dirichlet(np.full(size, rng.uniform(0.5, 2.0)))
    if allow_zero and size >= 3 and rng.random() < 0.35:
        drop = rng.choice(size, size=int(rng.integers(1, size - 1)), replace=False)
        probs[drop] = 0.0
        total = probs.sum()
        if total <= 0.0:
            return random_distribution(rng, size, allow_zero=False)
        probs = probs / total
    return probs


def random_hypotheses(rng, count: int, size: int) -> list:
    """Distinct random binary labelings; count is capped at 2^size."""
    count = min(count, 2**size)
    seen = {}
    while len(seen) < count:
        h = rng.integers(0, 2, size=size)
        seen.setdefault(h.tobytes(), h)
    return list(seen.values())


def random_instance(
    rng,
    max_agents: int = 3,
    max_hypotheses: int = 8,
    max_domain: int = 8,
    epsilons=(0.1, 0.2),
    deltas=(0.1, 0.2, 0.3),
    allow_zero: bool = True,
) -> Instance:
    n = int(rng.integers(2, max_domain + 1))
    h = int(rng.integers(2, min(max_hypotheses, 2**n) + 1))
    k = int(rng.integers(1, max_agents + 1))
    hyps = random_hypotheses(rng, h, n)
    dists = [random_distribution(rng, n, allow_zero) for _ in range(k)]
    costs = rng.uniform(0.05, 1.0, size=k)
    epsilon = float(rng.choice(np.asarray(epsilons)))
    delta = float(rng.choice(np.asarray(deltas)))
    return make_instance(hyps, dists, epsilon, delta, costs=costs)


def random_counts(rng, num_agents: int, total_max: int = 6) -> tuple:
    """A small counts vector with the stated bound on the total."""
    total = int(rng.integers(0, total_max + 1))
    counts = [0] * num_agents
    for _ in range(total):
        counts[int(rng.integers(0, num_agents))] += 1
    return tuple(counts)


def random_set_cover(rng, max_universe: int = 8, max_subsets: int = 6) -> SetCoverInstance:
    """A random covering family, patched so it really covers."""
    n = int(rng.integers(2, max_universe + 1))
    r = int(rng.integers(2, max_subsets + 1))
    subsets = []
    for _ in range(r):
        mask = rng.random(n) < rng.uniform(0.2, 0.7)
        subsets.append(set(np.flatnonzero(mask)))
    missing = set(range(n)) - set().union(*subsets)
    for x in missing:
        subsets[int(rng.integers(0, r))].add(x)
    return SetCoverInstance(n, tuple(subsets))


def with_self_sufficient_costs(instance: Instance, rng) -> Instance:
    """Rescale costs so each agent would rather contribute alone than fail.

    The game has trivial all-zero behavior when a solo plan already
    costs more than the unit benefit; drawing each cost below
    1 / (solo complexity) keeps every agent's participation live.
    """
    agents = []
    for i, agent in enumerate(instance.agents):
        solo = individual_sample_complexity(instance, i)
        cost = rng.uniform(0.3, 0.95) / max(solo, 1)
        agents.append(AgentSpec(agent.distribution, float(cost)))
    return Instance(
        domain=instance.domain,
        hypothesis_class=instance.hypothesis_class,
        agents=tuple(agents),
        epsilon=instance.epsilon,
        delta=instance.delta,
    )
