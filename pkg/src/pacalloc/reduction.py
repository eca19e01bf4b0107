"""Set-Cover embedding into single-agent sample allocation.

Each subset becomes a domain point whose draw eliminates exactly the
rival hypotheses of the universe elements it contains, so the fewest
subset points that can kill every rival equals the minimum cover size.
The accuracy and confidence parameters are chosen so that every rival
is bad and one miss already violates the bar, which keeps the
correspondence exact rather than approximate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import bruteforce
from .errors import CapacityError, SearchInfeasibleError, ValidationError
from .instances import Instance, disagreement_region, make_instance

COVER_ENUM_CAP = 20


@dataclass(frozen=True)
class SetCoverInstance:
    """A covering problem over {0, ..., universe_size - 1}.

    The subset family must cover the universe; this is checked at
    construction so downstream translations never chase an impossible
    cover.
    """

    universe_size: int
    subsets: tuple

    def __post_init__(self):
        size = int(self.universe_size)
        if size <= 0:
            raise ValidationError("universe size must be positive")
        family = tuple(frozenset(int(x) for x in s) for s in self.subsets)
        if not family:
            raise ValidationError("subset family must be non-empty")
        union = set()
        for s in family:
            for x in s:
                if not 0 <= x < size:
                    raise ValidationError("subset element out of universe range")
            union |= s
        if union != set(range(size)):
            raise ValidationError("subsets must cover the whole universe")
        object.__setattr__(self, "universe_size", size)
        object.__setattr__(self, "subsets", family)

    @property
    def num_subsets(self) -> int:
        return len(self.subsets)


def load_set_cover(path) -> SetCoverInstance:
    """Read {"universe_size": n, "subsets": [[...], ...]} from JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "universe_size" not in data or "subsets" not in data:
        raise ValidationError("set cover file needs universe_size and subsets fields")
    return SetCoverInstance(data["universe_size"], tuple(data["subsets"]))


def save_set_cover(cover: SetCoverInstance, path) -> None:
    data = {
        "universe_size": cover.universe_size,
        "subsets": [sorted(s) for s in cover.subsets],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def set_cover_to_pac(cover: SetCoverInstance) -> Instance:
    """Translate a covering problem into a one-agent instance.

    Domain points: one per subset, then one private tag point per
    universe element. Rival i labels positively the subsets containing
    element i plus its own tag, so drawing subset point j eliminates
    exactly the rivals with i in subset j. Epsilon is below the least
    possible rival mass and delta is one half, so a feasible sample
    must eliminate every rival outright.
    """
    r = cover.num_subsets
    n = cover.universe_size
    size = r + n
    hyps = [np.zeros(size, dtype=np.int64)]
    for i in range(n):
        h = np.zeros(size, dtype=np.int64)
        for j, s in enumerate(cover.subsets):
            if i in s:
                h[j] = 1
        h[r + i] = 1
        hyps.append(h)
    uniform = np.full(size, 1.0 / size)
    return make_instance(hyps, [uniform], 1.0 / (2.0 * size), 0.5, costs=[1.0])


def consistent_hypotheses(instance: Instance, target_index: int, sample_points) -> list:
    """Indices of hypotheses agreeing with the target on every sample point.

    The sample is a list of domain point indices labeled by the target;
    a hypothesis stays consistent exactly when its disagreement region
    avoids all of them.
    """
    points = sorted({int(x) for x in sample_points})
    for p in points:
        if not 0 <= p < instance.domain.size:
            raise ValidationError("sample point index out of range")
    target = instance.hypothesis_class[int(target_index)]
    out = []
    for j, h in enumerate(instance.hypothesis_class):
        region = disagreement_region(target, h)
        if not any(region[p] for p in points):
            out.append(j)
    return out


def min_eliminating_sample_count(
    instance: Instance, num_subset_points: int, target_index: int = 0
) -> int:
    """Fewest subset-block points whose draws kill every rival.

    The subset block is the first num_subset_points domain indices.
    Each rival must be hit inside the block; minimizing the hitting
    set is itself a covering problem over the rivals, solved here by
    exhaustive search.
    """
    r = int(num_subset_points)
    if not 0 < r <= instance.domain.size:
        raise ValidationError("num_subset_points must lie within the domain")
    if r > COVER_ENUM_CAP:
        raise CapacityError(
            f"{r} subset points exceed the exhaustive-search cap of {COVER_ENUM_CAP}"
        )
    target = instance.hypothesis_class[int(target_index)]
    rivals = []
    for j, h in enumerate(instance.hypothesis_class):
        if j == int(target_index):
            continue
        block = np.flatnonzero(disagreement_region(target, h)[:r])
        if block.size == 0:
            raise SearchInfeasibleError(
                f"rival {j} cannot be eliminated from the subset block"
            )
        rivals.append(set(int(x) for x in block))
    if not rivals:
        return 0
    point_sets = [
        {ridx for ridx, hit in enumerate(rivals) if p in hit} for p in range(r)
    ]
    answer = bruteforce.brute_force_set_cover(len(rivals), point_sets)
    if answer is None:
        raise SearchInfeasibleError("no point subset eliminates every rival")
    return answer[0]


def brute_force_set_cover(cover: SetCoverInstance) -> int:
    """Minimum cover size by exhaustive search; a capacity-guarded oracle."""
    if cover.num_subsets > COVER_ENUM_CAP:
        raise CapacityError(
            f"{cover.num_subsets} subsets exceed the exhaustive-search cap of "
            f"{COVER_ENUM_CAP}"
        )
    answer = bruteforce.brute_force_set_cover(cover.universe_size, cover.subsets)
    if answer is None:
        raise SearchInfeasibleError("subset family does not cover the universe")
    return answer[0]
