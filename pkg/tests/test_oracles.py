"""Exact oracle checks against independent exhaustive computations."""

import numpy as np
import pytest

from pacalloc import (
    CapacityError,
    ContributionVector,
    agent_requirement_met,
    expected_erm_error,
    expected_feasible,
    individual_sample_complexity,
    make_instance,
    nonexistence_instance,
    pac_failure_probability,
    pac_feasible,
    requirement_met,
    survival_probability,
    worst_expected_error,
)
from pacalloc.bruteforce import (
    brute_force_expected_error,
    brute_force_failure_probability,
    brute_force_feasible,
    coupon_collector_miss_probability,
)
from pacalloc.random_instances import random_counts, random_instance


def test_frozen_failure_value():
    # one uncovered third plus a double-draw miss: (1/3)^1 * (2/3)^1 ... the
    # target-0 failure of the cycle construction at counts (1, 1, 0) is 2/9
    inst = nonexistence_instance()
    fp = pac_failure_probability(inst, (1, 1, 0), 0, 0)
    assert fp.value == pytest.approx(2.0 / 9.0, abs=1e-15)
    assert fp.target_index == 0
    assert fp.agent_index == 0
    assert float(fp) == fp.value


def test_failure_matches_brute_force_on_random_instances():
    rng = np.random.default_rng(2024)
    for _ in range(12):
        inst = random_instance(
            rng,
            max_agents=2,
            max_hypotheses=5,
            max_domain=4,
            epsilons=(0.2, 0.34),
            deltas=(0.3, 0.5),
        )
        counts = random_counts(rng, inst.num_agents, total_max=5)
        for t in range(inst.num_hypotheses):
            for i in range(inst.num_agents):
                exact = float(pac_failure_probability(inst, counts, t, i))
                slow = brute_force_failure_probability(inst, counts, t, i)
                assert exact == pytest.approx(slow, abs=1e-12)
        assert pac_feasible(inst, counts) == brute_force_feasible(inst, counts)


def test_survival_probability():
    inst = make_instance(
        [[0, 0, 0], [1, 1, 0]],
        [[0.5, 0.3, 0.2], [0.1, 0.1, 0.8]],
        0.2,
        0.2,
    )
    # region {0, 1} has mass 0.8 for agent 0 and 0.2 for agent 1
    value = survival_probability(inst, (2, 1), [0, 1])
    assert value == pytest.approx((0.2**2) * (0.8**1), abs=1e-15)
    assert survival_probability(inst, (0, 0), [0]) == 1.0


def test_coupon_collector_threshold():
    """Uniform three-point domain with all single-flip rivals.

    The shared failure event is exactly "some domain point never drawn",
    so the solo sample complexity must match the coupon-collector tail.
    """
    hyps = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    dist = [1 / 3, 1 / 3, 1 / 3]
    inst = make_instance(hyps, [dist], 0.2, 0.3)
    n = individual_sample_complexity(inst, 0)
    assert coupon_collector_miss_probability(3, n) <= 0.3 + 1e-12
    assert coupon_collector_miss_probability(3, n - 1) > 0.3
    assert n == 6


def test_individual_sample_complexity_zero_when_no_bad_rivals():
    # every rival within epsilon of every target: nothing to learn
    inst = make_instance(
        [[0, 0], [1, 0]],
        [[0.1, 0.9]],
        0.15,
        0.5,
    )
    assert individual_sample_complexity(inst, 0) == 0
    assert pac_feasible(inst, (0,))


def test_delta_boundary_is_inclusive():
    # agent 0's failure at profile (0, 1, 0) is (2/3)^1, exactly delta,
    # and a probability exactly at delta must count as met
    inst = nonexistence_instance()
    fp = pac_failure_probability(inst, (0, 1, 0), 0, 0)
    assert fp.value == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert requirement_met(inst, (0, 1, 0), 0, 0)


def test_agent_requirement_met_scans_all_targets():
    inst = nonexistence_instance()
    vec = ContributionVector((1, 1, 1))
    per_target = [
        float(pac_failure_probability(inst, vec, t, 0)) <= inst.delta + 1e-12
        for t in range(inst.num_hypotheses)
    ]
    assert agent_requirement_met(inst, vec, 0) == all(per_target)


def test_monotone_in_counts():
    rng = np.random.default_rng(99)
    for _ in range(40):
        inst = random_instance(rng, max_agents=2, max_hypotheses=5, max_domain=4)
        base = random_counts(rng, inst.num_agents, total_max=4)
        bigger = tuple(b + extra for b, extra in zip(base, random_counts(rng, inst.num_agents, total_max=2)))
        for t in range(inst.num_hypotheses):
            for i in range(inst.num_agents):
                lo = float(pac_failure_probability(inst, bigger, t, i))
                hi = float(pac_failure_probability(inst, base, t, i))
                assert lo <= hi + 1e-12


def test_expected_error_matches_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(8):
        inst = random_instance(rng, max_agents=2, max_hypotheses=4, max_domain=3)
        counts = random_counts(rng, inst.num_agents, total_max=4)
        for t in range(inst.num_hypotheses):
            for i in range(inst.num_agents):
                fast = expected_erm_error(inst, counts, t, i)
                slow = brute_force_expected_error(inst, counts, t, i)
                assert fast == pytest.approx(slow, abs=1e-12)


def test_expected_feasible_agrees_with_worst_error():
    inst = nonexistence_instance()
    counts = (2, 2, 2)
    err = worst_expected_error(inst, counts)
    assert expected_feasible(inst, counts) == (err <= inst.epsilon + 1e-12)


def test_domain_cap():
    labels = np.zeros(64, dtype=np.uint8)
    other = labels.copy()
    other[0] = 1
    dist = np.full(64, 1.0 / 64)
    inst = make_instance([labels, other], [dist], 0.01, 0.5)
    with pytest.raises(CapacityError):
        pac_failure_probability(inst, (1,), 0, 0)


def test_bad_counts_rejected():
    inst = nonexistence_instance()
    with pytest.raises(Exception):
        pac_failure_probability(inst, (1, 1), 0, 0)
