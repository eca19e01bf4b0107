"""Covering problems wear a learning-problem costume.

Each universe element becomes a rival hypothesis; each subset becomes
a domain point that eliminates exactly the rivals of its members. The
fewest samples that pin down the target equals the minimum cover.
"""

import numpy as np

from pacalloc import (
    SetCoverInstance,
    brute_force_set_cover,
    consistent_hypotheses,
    min_eliminating_sample_count,
    set_cover_to_pac,
)
from pacalloc.random_instances import random_set_cover


def main():
    cover = SetCoverInstance(5, [{0, 1, 2}, {2, 3}, {3, 4}, {0, 4}])
    inst = set_cover_to_pac(cover)
    print(f"universe of {cover.universe_size}, {cover.num_subsets} subsets"
          f" -> domain of {inst.domain.size}, {inst.num_hypotheses} hypotheses,"
          f" epsilon {inst.epsilon}")

    k = brute_force_set_cover(cover)
    m = min_eliminating_sample_count(inst, cover.num_subsets)
    print(f"minimum cover size {k}, minimum eliminating sample {m}")

    picks = [0, 2]  # subsets {0,1,2} and {3,4} cover everything
    alive = consistent_hypotheses(inst, 0, picks)
    print(f"sampling subset points {picks} leaves consistent set {alive} "
          "(the target alone)")
    print()

    rng = np.random.default_rng(7)
    agree = 0
    for _ in range(10):
        c = random_set_cover(rng)
        agree += brute_force_set_cover(c) == min_eliminating_sample_count(
            set_cover_to_pac(c), c.num_subsets
        )
    print(f"random spot check: {agree}/10 translations agree exactly")


if __name__ == "__main__":
    main()
