import numpy as np

from pacalloc import individual_sample_complexity
from pacalloc.random_instances import (
    random_counts,
    random_distribution,
    random_hypotheses,
    random_instance,
    random_set_cover,
    with_self_sufficient_costs,
)


def test_distributions_are_distributions():
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = random_distribution(rng, 5)
        assert d.shape == (5,)
        assert np.all(d >= 0)
        assert abs(d.sum() - 1.0) < 1e-9


def test_hypotheses_are_distinct():
    rng = np.random.default_rng(2)
    hyps = random_hypotheses(rng, 8, 3)
    seen = {h.tobytes() for h in hyps}
    assert len(seen) == len(hyps) == 8


def test_instance_bounds():
    rng = np.random.default_rng(3)
    for _ in range(30):
        inst = random_instance(rng, max_agents=3, max_hypotheses=6, max_domain=5)
        assert 1 <= inst.num_agents <= 3
        assert inst.num_hypotheses <= 6
        assert inst.domain.size <= 5
        assert 0 < inst.epsilon < 1
        assert 0 < inst.delta < 1


def test_counts_bounds():
    rng = np.random.default_rng(4)
    for _ in range(20):
        c = random_counts(rng, 3, total_max=6)
        assert len(c) == 3
        assert sum(c) <= 6
        assert min(c) >= 0


def test_set_cover_covers():
    rng = np.random.default_rng(5)
    for _ in range(20):
        cover = random_set_cover(rng)
        union = set()
        for s in cover.subsets:
            union |= set(s)
        assert union == set(range(cover.universe_size))


def test_self_sufficient_costs():
    rng = np.random.default_rng(6)
    for _ in range(10):
        inst = with_self_sufficient_costs(
            random_instance(rng, max_agents=2, max_hypotheses=5, max_domain=4), rng
        )
        for i in range(inst.num_agents):
            solo = individual_sample_complexity(inst, i)
            assert inst.agents[i].cost * solo < 1.0
