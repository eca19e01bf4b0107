"""Exact failure-probability and expected-error oracles.

Whether a rival hypothesis survives depends only on which domain points
the combined sample hits, so every quantity here reduces to a signed sum
of terms prod_i (1 - mass_i)^{m_i} taken over unions of disagreement
regions. Regions are stored as uint64 bitmasks; all subset unions are
built with a small dynamic program and collapsed with numpy before any
exponent is applied, so evaluating a counts vector is cheap no matter
how many times a search probes the same pair.

When the number of rival regions exceeds the exact cap, the boolean
decision "does this counts vector meet delta" can often still be settled
by bracketing the failure chance between cheap upper and lower bounds;
see requirement_met for the cascade. Point estimates beyond the cap
raise CapacityError.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from weakref import WeakKeyDictionary

import numpy as np

from .errors import CapacityError, ValidationError
from .instances import (
    EPS_SLACK,
    Instance,
    disagreement_region,
    unacceptable_hypotheses,
    within_delta,
)

DEFAULT_ORACLE_CAP = 20

# One uint64 per region; the top bit stays clear to avoid signed
# conversion traps, so exact oracles stop at 63 domain points.
MAX_EXACT_DOMAIN = 63

# Caps for the bounding cascade on oversized rival families.
HITTING_SET_LIMIT = 15
SUBFAMILY_SIZE = 12
BONFERRONI_DEPTH = 6
BONFERRONI_ENUM_LIMIT = 200_000

_HALF = np.uint64(0xFFFF)

_caches: "WeakKeyDictionary[Instance, dict]" = WeakKeyDictionary()


def oracle_cap(cap=None) -> int:
    """Resolve the rival-region cap: argument, ORACLE_CAP env, or default."""
    if cap is not None:
        return int(cap)
    return int(os.environ.get("ORACLE_CAP", DEFAULT_ORACLE_CAP))


def _cache(instance: Instance) -> dict:
    c = _caches.get(instance)
    if c is None:
        c = {}
        _caches[instance] = c
    return c


def _counts_array(instance: Instance, counts) -> np.ndarray:
    m = np.asarray(tuple(counts))
    if m.shape != (instance.num_agents,):
        raise ValidationError("counts length does not match the number of agents")
    if not np.issubdtype(m.dtype, np.integer):
        rounded = np.rint(m)
        if not np.array_equal(rounded, m):
            raise ValidationError("sample counts must be integers")
        m = rounded
    m = m.astype(np.int64)
    if (m < 0).any():
        raise ValidationError("sample counts must be non-negative")
    return m


# ---------------------------------------------------------------------------
# bitmask plumbing


def _agent_tables(instance: Instance) -> np.ndarray:
    """Per-agent lookup tables mapping 16-bit mask chunks to their mass."""
    cache = _cache(instance)
    tabs = cache.get("tables")
    if tabs is None:
        n = instance.domain.size
        if n > MAX_EXACT_DOMAIN:
            raise CapacityError(
                f"exact oracles support domains up to {MAX_EXACT_DOMAIN} points, got {n}"
            )
        padded = np.zeros((instance.num_agents, 64))
        padded[:, :n] = instance.distribution_matrix()
        tabs = np.zeros((instance.num_agents, 4, 1 << 16))
        for c in range(4):
            w = padded[:, 16 * c : 16 * (c + 1)]
            block = tabs[:, c, :]
            for j in range(16):
                lo = 1 << j
                block[:, lo : 2 * lo] = block[:, :lo] + w[:, j : j + 1]
        cache["tables"] = tabs
    return tabs


def _union_masses(instance: Instance, unions: np.ndarray) -> np.ndarray:
    """Per-agent probability mass of each union bitmask, as a (k, S) matrix."""
    tabs = _agent_tables(instance)
    out = np.zeros((instance.num_agents, unions.shape[0]))
    for c in range(4):
        idx = ((unions >> np.uint64(16 * c)) & _HALF).astype(np.int64)
        out += tabs[:, c, :][:, idx]
    return out


def _region_mask(region_bool: np.ndarray) -> int:
    mask = 0
    for b in np.flatnonzero(region_bool):
        mask |= 1 << int(b)
    return mask


def _mask_points(mask: int) -> list:
    pts = []
    while mask:
        low = mask & -mask
        pts.append(low.bit_length() - 1)
        mask ^= low
    return pts


def _bad_region_masks(instance: Instance, target_index: int, agent_index: int) -> np.ndarray:
    """Disagreement regions of the rivals, deduplicated and pruned.

    Regions that are equal as sets trigger identical survival events, so
    duplicates are dropped. A region that strictly contains another is
    hit whenever the smaller one is, so its survival event lies inside
    the smaller region's event and dropping it leaves the union of
    events unchanged.
    """
    if instance.domain.size > MAX_EXACT_DOMAIN:
        raise CapacityError(
            f"exact oracles support domains up to {MAX_EXACT_DOMAIN} points, "
            f"got {instance.domain.size}"
        )
    cache = _cache(instance).setdefault("regions", {})
    key = (target_index, agent_index)
    if key not in cache:
        target = instance.hypothesis_class[target_index]
        masks = []
        for j in unacceptable_hypotheses(instance, target_index, agent_index):
            mk = _region_mask(disagreement_region(target, instance.hypothesis_class[j]))
            if mk not in masks:
                masks.append(mk)
        keep = [a for a in masks if not any(b != a and (a | b) == a for b in masks)]
        cache[key] = np.array(keep, dtype=np.uint64)
    return cache[key]


def _region_mass_matrix(instance: Instance, target_index: int, agent_index: int) -> np.ndarray:
    cache = _cache(instance).setdefault("rmass", {})
    key = (target_index, agent_index)
    if key not in cache:
        masks = _bad_region_masks(instance, target_index, agent_index)
        cache[key] = _union_masses(instance, masks)
    return cache[key]


# ---------------------------------------------------------------------------
# collapsed inclusion-exclusion series


@dataclass(frozen=True, eq=False)
class SurvivalSeries:
    """Signed collapsed terms: eval(m) = sum_r weight_r * prod_i base_{r,i}^{m_i}."""

    bases: np.ndarray
    weights: np.ndarray

    def eval(self, m) -> float:
        if self.bases.shape[0] == 0:
            return 0.0
        powers = np.power(self.bases, np.asarray(m)[None, :])
        return float(powers.prod(axis=1) @ self.weights)


def _collapse(masses: np.ndarray, weights: np.ndarray):
    """Merge identical mass columns, summing their signed weights.

    masses is (k, S), weights is (S,). Columns only collapse when every
    agent's mass agrees bit for bit, which holds whenever two subsets
    share a union bitmask, so the merge never changes the value.
    """
    cols = np.ascontiguousarray(masses.T)
    uniq, inverse = np.unique(cols, axis=0, return_inverse=True)
    agg = np.zeros(uniq.shape[0])
    np.add.at(agg, np.asarray(inverse).ravel(), weights)
    keep = agg != 0.0
    return 1.0 - uniq[keep], agg[keep]


def _subset_unions(masks: np.ndarray) -> np.ndarray:
    """Union bitmask of every subset of masks, indexed by subset bits.

    Subsets whose highest region index is j occupy indices [2^j, 2^{j+1}),
    and dropping that region lands in the already-filled lower half.
    """
    b = int(masks.shape[0])
    unions = np.zeros(1 << b, dtype=np.uint64)
    for j in range(b):
        lo = 1 << j
        unions[lo : 2 * lo] = unions[:lo] | masks[j]
    return unions


def _ie_series(instance: Instance, masks: np.ndarray) -> SurvivalSeries:
    """Full inclusion-exclusion series for P(some region escapes the sample)."""
    b = int(masks.shape[0])
    if b == 0:
        return SurvivalSeries(np.ones((0, instance.num_agents)), np.zeros(0))
    unions = _subset_unions(masks)[1:]
    sizes = np.bitwise_count(np.arange(1, 1 << b, dtype=np.uint64)).astype(np.int64)
    signs = np.where(sizes % 2 == 1, 1.0, -1.0)
    masses = _union_masses(instance, unions)
    bases, weights = _collapse(masses, signs)
    return SurvivalSeries(bases, weights)


def _failure_series(instance: Instance, target_index: int, agent_index: int) -> SurvivalSeries:
    cache = _cache(instance).setdefault("failure_series", {})
    key = (target_index, agent_index)
    series = cache.get(key)
    if series is None:
        masks = _bad_region_masks(instance, target_index, agent_index)
        series = _ie_series(instance, masks)
        cache[key] = series
    return series


@dataclass(frozen=True)
class FailureProbability:
    """Failure chance for one (truth, agent) pair; compares like a float."""

    value: float
    target_index: int
    agent_index: int

    def __float__(self) -> float:
        return self.value


def survival_probability(instance: Instance, counts, region) -> float:
    """Chance that no draw from the shared sample lands in the region.

    The region is a set of domain point indices. Draws are independent,
    so the answer is a product over agents of (1 - mass)^{m_i}.
    """
    m = _counts_array(instance, counts)
    points = np.asarray(sorted({int(x) for x in region}), dtype=np.int64)
    if points.size and (points[0] < 0 or points[-1] >= instance.domain.size):
        raise ValidationError("region contains out-of-range point indices")
    if points.size == 0:
        return 1.0
    masses = instance.distribution_matrix()[:, points].sum(axis=1)
    return float(np.prod(np.power(np.clip(1.0 - masses, 0.0, 1.0), m)))


def pac_failure_probability(
    instance: Instance, counts, target_index: int, agent_index: int, cap=None
) -> FailureProbability:
    """Exact chance that some epsilon-bad rival survives the whole sample.

    The sample is shared: every agent's draws eliminate rivals for every
    other agent. Worst-case tie-breaking means the agent fails exactly
    when at least one of its bad rivals is consistent with the data.
    """
    m = _counts_array(instance, counts)
    cap = oracle_cap(cap)
    masks = _bad_region_masks(instance, target_index, agent_index)
    if int(masks.shape[0]) > cap:
        raise CapacityError(
            f"{int(masks.shape[0])} rival regions exceed the exact cap of {cap}; "
            "raise ORACLE_CAP or use the Monte Carlo estimator"
        )
    value = _failure_series(instance, target_index, agent_index).eval(m)
    return FailureProbability(
        min(max(value, 0.0), 1.0), int(target_index), int(agent_index)
    )


# ---------------------------------------------------------------------------
# feasibility decisions, with a bounding cascade past the cap


def requirement_met(
    instance: Instance, counts, target_index: int, agent_index: int, cap=None
) -> bool:
    """Decide whether counts meets the delta bar for one (truth, agent) pair.

    Below the cap this evaluates the exact series. Past the cap it runs
    a cascade of upper and lower bounds (union bound, single-event bound,
    a hitting-set relaxation, alternating partial sums, a second-moment
    lower bound, and an exact subfamily) and only raises CapacityError
    when none of them separates the failure chance from delta.
    """
    m = _counts_array(instance, counts)
    cap = oracle_cap(cap)
    memo = _cache(instance).setdefault("met", {})
    key = (target_index, agent_index, tuple(int(x) for x in m))
    hit = memo.get(key)
    if hit is None:
        hit = _requirement_met_fresh(instance, m, target_index, agent_index, cap)
        memo[key] = hit
    return hit


def _requirement_met_fresh(instance, m, t, i, cap) -> bool:
    masks = _bad_region_masks(instance, t, i)
    b = int(masks.shape[0])
    if b == 0:
        return True
    if b <= cap:
        return within_delta(_failure_series(instance, t, i).eval(m), instance.delta)
    return _bracket_decision(instance, m, t, i, masks)


def _bracket_decision(instance, m, t, i, masks) -> bool:
    delta = instance.delta
    masses = _region_mass_matrix(instance, t, i)
    survival = np.prod(np.power(1.0 - masses, m[:, None]), axis=0)
    s1 = float(survival.sum())
    if within_delta(s1, delta):
        return True
    if not within_delta(float(survival.max()), delta):
        return False
    hitting = _hitting_set_series(instance, t, i)
    if hitting is not None and within_delta(hitting.eval(m), delta):
        return True
    sums = [s1]
    for depth in range(2, BONFERRONI_DEPTH + 1):
        table = _bonferroni_table(instance, t, i, depth)
        if table is None:
            break
        sums.append(_eval_sum_table(table, m))
        partial = 0.0
        for idx, s in enumerate(sums):
            partial += s if idx % 2 == 0 else -s
        if depth % 2 == 0:
            # Even truncations of the alternating series are lower bounds.
            if not within_delta(partial, delta):
                return False
            if depth == 2:
                s2 = sums[1]
                kappa = 1 + int((2.0 * s2) // s1) if s1 > 0 else 1
                second_moment_lb = (
                    2.0 * s1 / (kappa + 1) - 2.0 * s2 / (kappa * (kappa + 1))
                )
                if not within_delta(second_moment_lb, delta):
                    return False
        else:
            if within_delta(partial, delta):
                return True
    sub = _subfamily_value(instance, t, i, m, survival)
    if sub is not None and not within_delta(sub, delta):
        return False
    raise CapacityError(
        f"cannot separate the failure chance from delta for target {t}, agent {i} "
        f"({int(masks.shape[0])} rival regions); raise ORACLE_CAP or use Monte Carlo"
    )


def _hitting_set_series(instance, t, i):
    """Upper bound series from shrinking each region to one shared point.

    A subset of a region escapes the sample whenever the region does, so
    replacing every region by a single chosen point inside it can only
    grow the union of survival events. A greedy pass picks points that
    pierce many regions; if more than HITTING_SET_LIMIT points are
    needed the bound is skipped.
    """
    cache = _cache(instance).setdefault("hitting", {})
    key = (t, i)
    if key not in cache:
        remaining = [int(mk) for mk in _bad_region_masks(instance, t, i)]
        chosen = []
        while remaining and len(chosen) < HITTING_SET_LIMIT:
            tallies = {}
            for mk in remaining:
                for p in _mask_points(mk):
                    tallies[p] = tallies.get(p, 0) + 1
            point = max(sorted(tallies), key=lambda p: tallies[p])
            bit = 1 << point
            chosen.append(bit)
            remaining = [mk for mk in remaining if not (mk & bit)]
        if remaining or not chosen:
            cache[key] = None
        else:
            cache[key] = _ie_series(instance, np.array(chosen, dtype=np.uint64))
    return cache[key]


def _structured_groups(instance, t, i):
    """Common-core decomposition of the rival regions, when it applies.

    Returns (common_mass, group_masses, group_sizes) when every domain
    point lies in zero, one, or all of the regions. Each region is then
    the common core plus a private block, the private blocks are
    pairwise disjoint, and the mass of any union is the common mass plus
    the sum of the chosen private masses.
    """
    cache = _cache(instance).setdefault("struct", {})
    key = (t, i)
    if key not in cache:
        masks = _bad_region_masks(instance, t, i)
        b = int(masks.shape[0])
        n = instance.domain.size
        membership = np.zeros(n, dtype=np.int64)
        for mk in masks:
            for p in _mask_points(int(mk)):
                membership[p] += 1
        used = membership > 0
        if not np.isin(membership[used], (1, b)).all():
            cache[key] = None
        else:
            dists = instance.distribution_matrix()
            common_points = np.flatnonzero(membership == b)
            common_mask = 0
            for p in common_points:
                common_mask |= 1 << int(p)
            if common_points.size:
                common_mass = dists[:, common_points].sum(axis=1)
            else:
                common_mass = np.zeros(instance.num_agents)
            private = []
            for mk in masks:
                pts = _mask_points(int(mk) & ~common_mask)
                if pts:
                    private.append(dists[:, pts].sum(axis=1))
                else:
                    private.append(np.zeros(instance.num_agents))
            arr = np.array(private)
            uniq, counts = np.unique(arr, axis=0, return_counts=True)
            cache[key] = (
                common_mass,
                [uniq[g] for g in range(uniq.shape[0])],
                [int(c) for c in counts],
            )
    return cache[key]


def _compositions(total, limits):
    if not limits:
        if total == 0:
            yield ()
        return
    for x in range(min(limits[0], total) + 1):
        for rest in _compositions(total - x, limits[1:]):
            yield (x,) + rest


def _bonferroni_table(instance, t, i, depth):
    """Collapsed table for the sum over all depth-sized region subsets.

    Prefers the common-core decomposition, which reduces the sum to a
    handful of compositions with binomial multiplicities; otherwise
    enumerates subsets directly when their number is modest. Returns
    None when neither route fits.
    """
    cache = _cache(instance).setdefault("bonf", {})
    key = (t, i, depth)
    if key not in cache:
        cache[key] = _build_bonferroni(instance, t, i, depth)
    return cache[key]


def _build_bonferroni(instance, t, i, depth):
    masks = _bad_region_masks(instance, t, i)
    b = int(masks.shape[0])
    if depth > b:
        return np.zeros((0, instance.num_agents)), np.zeros(0)
    structured = _structured_groups(instance, t, i)
    if structured is not None:
        common_mass, group_masses, group_sizes = structured
        rows = []
        counts = []
        for combo in _compositions(depth, group_sizes):
            ways = 1.0
            vec = common_mass.copy()
            for g, tg in enumerate(combo):
                if tg:
                    ways *= math.comb(group_sizes[g], tg)
                    vec = vec + tg * group_masses[g]
            rows.append(vec)
            counts.append(ways)
        return np.array(rows), np.array(counts)
    if math.comb(b, depth) <= BONFERRONI_ENUM_LIMIT:
        unions = np.zeros(math.comb(b, depth), dtype=np.uint64)
        for r, picks in enumerate(itertools.combinations(range(b), depth)):
            u = np.uint64(0)
            for p in picks:
                u |= masks[p]
            unions[r] = u
        masses = _union_masses(instance, unions)
        cols = np.ascontiguousarray(masses.T)
        uniq, inverse = np.unique(cols, axis=0, return_inverse=True)
        agg = np.zeros(uniq.shape[0])
        np.add.at(agg, np.asarray(inverse).ravel(), 1.0)
        return uniq, agg
    return None


def _eval_sum_table(table, m) -> float:
    rows, counts = table
    if rows.shape[0] == 0:
        return 0.0
    powers = np.power(1.0 - rows, np.asarray(m)[None, :])
    return float(powers.prod(axis=1) @ counts)


def _subfamily_value(instance, t, i, m, survival):
    """Exact union probability over the regions most likely to escape.

    Any subfamily's union event sits inside the full union, so this is a
    valid lower bound. The subfamily is re-chosen per query because the
    survival ordering depends on the counts.
    """
    masks = _bad_region_masks(instance, t, i)
    size = min(SUBFAMILY_SIZE, int(masks.shape[0]))
    if size == 0:
        return None
    order = np.sort(np.argsort(-survival, kind="stable")[:size])
    key = (t, i, tuple(int(x) for x in order))
    cache = _cache(instance).setdefault("subfam", {})
    series = cache.get(key)
    if series is None:
        series = _ie_series(instance, masks[order])
        cache[key] = series
    return series.eval(m)


def pac_feasible(instance: Instance, counts, cap=None) -> bool:
    """Whether counts meets the delta bar for every (truth, agent) pair.

    Pairs that recently failed are checked first, which makes the dense
    infeasible region of a search cheap to reject.
    """
    m = _counts_array(instance, counts)
    cap = oracle_cap(cap)
    order = _cache(instance).setdefault(
        "pair_order",
        [
            (t, i)
            for t in range(instance.num_hypotheses)
            for i in range(instance.num_agents)
        ],
    )
    for pos, pair in enumerate(list(order)):
        if not requirement_met(instance, m, pair[0], pair[1], cap):
            if pos:
                order.remove(pair)
                order.insert(0, pair)
            return False
    return True


def agent_requirement_met(instance: Instance, counts, agent_index: int, cap=None) -> bool:
    """Whether counts meets the delta bar for one agent under every truth."""
    m = _counts_array(instance, counts)
    cap = oracle_cap(cap)
    order = _cache(instance).setdefault(
        ("agent_order", int(agent_index)),
        list(range(instance.num_hypotheses)),
    )
    for pos, t in enumerate(list(order)):
        if not requirement_met(instance, m, t, agent_index, cap):
            if pos:
                order.remove(t)
                order.insert(0, t)
            return False
    return True


def individual_sample_complexity(instance: Instance, agent_index: int, cap=None) -> int:
    """Fewest solo draws with which this agent meets its own delta bar.

    Solo means every other agent contributes zero. Failure chances are
    non-increasing in the count, so binary search applies. The search
    ceiling ln(H/delta)/epsilon always suffices: each bad rival survives
    with chance at most (1-eps)^m <= delta/H there, and a union bound
    over at most H-1 rivals closes the gap.
    """
    i = int(agent_index)
    if not 0 <= i < instance.num_agents:
        raise ValidationError("agent index out of range")
    memo = _cache(instance).setdefault("solo_complexity", {})
    if (i, "cap", cap) in memo:
        return memo[(i, "cap", cap)]
    hi = int(
        math.ceil(
            math.log(instance.num_hypotheses / instance.delta) / instance.epsilon
        )
    )

    def met(m_i: int) -> bool:
        solo = np.zeros(instance.num_agents, dtype=np.int64)
        solo[i] = m_i
        return agent_requirement_met(instance, solo, i, cap)

    if met(0):
        memo[(i, "cap", cap)] = 0
        return 0
    if not met(hi):
        raise CapacityError(
            f"solo requirement for agent {i} undecided at the ceiling {hi}"
        )
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if met(mid):
            hi = mid
        else:
            lo = mid
    memo[(i, "cap", cap)] = hi
    return hi


# ---------------------------------------------------------------------------
# expected worst-case error


def _error_regions(instance: Instance, target_index: int, agent_index: int):
    """Distinct rival regions with positive mass, sorted by mass descending."""
    cache = _cache(instance).setdefault("error_regions", {})
    key = (target_index, agent_index)
    if key not in cache:
        target = instance.hypothesis_class[target_index]
        dist = instance.agents[agent_index].distribution
        if instance.domain.size > MAX_EXACT_DOMAIN:
            raise CapacityError(
                f"exact oracles support domains up to {MAX_EXACT_DOMAIN} points, "
                f"got {instance.domain.size}"
            )
        seen = {}
        for j, h in enumerate(instance.hypothesis_class):
            if j == target_index:
                continue
            region = disagreement_region(target, h)
            mask = _region_mask(region)
            if mask in seen:
                continue
            mass = float(dist[region].sum())
            if mass > 0.0:
                seen[mask] = mass
        items = sorted(seen.items(), key=lambda kv: (-kv[1], kv[0]))
        cache[key] = (
            np.array([mk for mk, _ in items], dtype=np.uint64),
            np.array([ms for _, ms in items]),
        )
    return cache[key]


def expected_erm_error(
    instance: Instance, counts, target_index: int, agent_index: int, cap=None
) -> float:
    """Expected worst-case disagreement mass of a consistent pick.

    With regions sorted by mass, the realized error equals the mass of
    the first region that escapes the sample, so the expectation is a
    mass-weighted sum of "this region escapes and none before it does"
    probabilities, each expanded by inclusion-exclusion over the prefix.
    Subsets whose top region is j occupy indices [2^j, 2^{j+1}) of the
    union table, which is exactly the prefix structure needed.
    """
    m = _counts_array(instance, counts)
    cap = oracle_cap(cap)
    masks, masses = _error_regions(instance, target_index, agent_index)
    kk = int(masks.shape[0])
    if kk > cap:
        raise CapacityError(
            f"{kk} rival regions exceed the exact cap of {cap} for expected error; "
            "raise ORACLE_CAP or use the Monte Carlo estimator"
        )
    cache = _cache(instance).setdefault("error_series", {})
    series = cache.get((target_index, agent_index))
    if series is None:
        if kk == 0:
            series = SurvivalSeries(np.ones((0, instance.num_agents)), np.zeros(0))
        else:
            unions = _subset_unions(masks)[1:]
            idx = np.arange(1, 1 << kk, dtype=np.uint64)
            sizes = np.bitwise_count(idx).astype(np.int64)
            tops = np.floor(np.log2(idx.astype(np.float64))).astype(np.int64)
            weights = masses[tops] * np.where(sizes % 2 == 1, 1.0, -1.0)
            bases, w = _collapse(_union_masses(instance, unions), weights)
            series = SurvivalSeries(bases, w)
        cache[(target_index, agent_index)] = series
    return max(series.eval(m), 0.0)


def worst_expected_error(instance: Instance, counts, cap=None) -> float:
    """Largest expected error over all (truth, agent) pairs."""
    worst = 0.0
    for t in range(instance.num_hypotheses):
        for i in range(instance.num_agents):
            worst = max(worst, expected_erm_error(instance, counts, t, i, cap))
    return worst


def expected_feasible(instance: Instance, counts, cap=None) -> bool:
    """Whether every (truth, agent) expected error is at most epsilon."""
    for t in range(instance.num_hypotheses):
        for i in range(instance.num_agents):
            err = expected_erm_error(instance, counts, t, i, cap)
            if err > instance.epsilon + EPS_SLACK:
                return False
    return True
