"""Monte Carlo estimators for failure chances and expected error.

All pairs of (candidate truth, agent) are evaluated on the same stream
of simulated datasets, so the estimates are directly comparable and a
single seed fixes the whole computation. Datasets are drawn in fixed
size chunks; the chunk size is part of the reproducibility contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .instances import Instance, disagreement_region, unacceptable_hypotheses
from .oracles import MAX_EXACT_DOMAIN, _bad_region_masks, _counts_array

CHUNK = 1 << 16


def _draw_chunks(instance: Instance, counts, trials: int, rng, as_masks: bool):
    """Yield per-trial hit sets, either uint64 bitmasks or boolean rows."""
    n = instance.domain.size
    cdfs = [np.cumsum(a.distribution) for a in instance.agents]
    done = 0
    while done < trials:
        size = min(CHUNK, trials - done)
        if as_masks:
            seen = np.zeros(size, dtype=np.uint64)
        else:
            seen = np.zeros((size, n), dtype=bool)
        for i, m in enumerate(counts):
            m = int(m)
            if m == 0:
                continue
            u = rng.random((size, m))
            draws = np.minimum(np.searchsorted(cdfs[i], u, side="right"), n - 1)
            if as_masks:
                bits = np.left_shift(np.uint64(1), draws.astype(np.uint64))
                seen |= np.bitwise_or.reduce(bits, axis=1)
            else:
                rows = np.repeat(np.arange(size), m)
                seen[rows, draws.ravel()] = True
        done += size
        yield seen


def _pair_regions(instance: Instance, pairs, as_masks: bool):
    out = {}
    for t, i in pairs:
        if as_masks:
            out[(t, i)] = [np.uint64(mk) for mk in _bad_region_masks(instance, t, i)]
        else:
            target = instance.hypothesis_class[t]
            out[(t, i)] = [
                np.flatnonzero(disagreement_region(target, instance.hypothesis_class[j]))
                for j in unacceptable_hypotheses(instance, t, i)
            ]
    return out


def _estimate_pairs(instance: Instance, counts, pairs, trials: int, seed) -> dict:
    m = _counts_array(instance, counts)
    rng = np.random.default_rng(seed)
    as_masks = instance.domain.size <= MAX_EXACT_DOMAIN
    regions = _pair_regions(instance, pairs, as_masks)
    hits = {pair: 0 for pair in pairs}
    zero = np.uint64(0)
    for seen in _draw_chunks(instance, m, trials, rng, as_masks):
        for pair, masks in regions.items():
            if not masks:
                continue
            bad = np.zeros(seen.shape[0], dtype=bool)
            for mk in masks:
                if as_masks:
                    bad |= (seen & mk) == zero
                else:
                    bad |= ~seen[:, mk].any(axis=1)
            hits[pair] += int(bad.sum())
    return {pair: hits[pair] / trials for pair in pairs}


def monte_carlo_failure_probability(
    instance: Instance, counts, target_index: int, agent_index: int, trials: int, seed=0
) -> float:
    """Estimated chance that some bad rival survives, for one pair."""
    est = _estimate_pairs(instance, counts, [(target_index, agent_index)], trials, seed)
    return est[(target_index, agent_index)]


@dataclass(frozen=True)
class MonteCarloEstimate:
    """A binomial point estimate with its plug-in standard error."""

    estimate: float
    standard_error: float
    trials: int
    seed: int

    def __float__(self) -> float:
        return self.estimate


def monte_carlo_pac_failure(
    instance: Instance, counts, target_index: int, agent_index: int, trials: int, seed=0
) -> MonteCarloEstimate:
    """Failure-chance estimate for one pair, with its standard error."""
    if int(trials) <= 0:
        raise ValidationError("trials must be a positive integer")
    p = monte_carlo_failure_probability(
        instance, counts, target_index, agent_index, int(trials), seed
    )
    se = math.sqrt(max(p * (1.0 - p), 0.0) / int(trials))
    return MonteCarloEstimate(p, se, int(trials), int(seed))


def monte_carlo_estimates(instance: Instance, counts, trials: int, seed=0) -> np.ndarray:
    """Estimated failure chance of every (truth, agent) pair.

    Returns a (num_hypotheses, num_agents) array; all entries come from
    the same simulated datasets.
    """
    pairs = [
        (t, i)
        for t in range(instance.num_hypotheses)
        for i in range(instance.num_agents)
    ]
    est = _estimate_pairs(instance, counts, pairs, trials, seed)
    out = np.zeros((instance.num_hypotheses, instance.num_agents))
    for (t, i), value in est.items():
        out[t, i] = value
    return out


def monte_carlo_expected_error(
    instance: Instance, counts, target_index: int, agent_index: int, trials: int, seed=0
) -> float:
    """Estimated expected worst-case disagreement mass of a consistent pick."""
    m = _counts_array(instance, counts)
    rng = np.random.default_rng(seed)
    as_masks = instance.domain.size <= MAX_EXACT_DOMAIN
    target = instance.hypothesis_class[target_index]
    dist = instance.agents[agent_index].distribution
    regions = []
    seen_regions = set()
    for j, h in enumerate(instance.hypothesis_class):
        if j == target_index:
            continue
        region = disagreement_region(target, h)
        key = region.tobytes()
        if key in seen_regions:
            continue
        seen_regions.add(key)
        mass = float(dist[region].sum())
        if mass > 0.0:
            regions.append((mass, region))
    if not regions:
        return 0.0
    regions.sort(key=lambda pair: -pair[0])
    total = 0.0
    zero = np.uint64(0)
    for seen in _draw_chunks(instance, m, trials, rng, as_masks):
        value = np.zeros(seen.shape[0])
        alive = np.ones(seen.shape[0], dtype=bool)
        for mass, region in regions:
            if as_masks:
                mk = np.uint64(0)
                for p in np.flatnonzero(region):
                    mk |= np.uint64(1 << int(p))
                miss = (seen & mk) == zero
            else:
                miss = ~seen[:, np.flatnonzero(region)].any(axis=1)
            first = alive & miss
            value[first] = mass
            alive &= ~first
        total += float(value.sum())
    return total / trials
