import numpy as np
import pytest

from pacalloc import (
    SearchInfeasibleError,
    approximation_ratio,
    default_cap,
    exact_min_cost,
    expected_feasible,
    free_rider_instance,
    individual_sample_complexity,
    make_instance,
    nonexistence_instance,
    pac_feasible,
)
from pacalloc.bruteforce import brute_force_min_cost
from pacalloc.random_instances import random_instance


def test_known_optimum():
    inst = free_rider_instance()
    vec = exact_min_cost(inst, "pac")
    assert tuple(vec) == (1, 1)
    assert vec.total_cost(inst) == pytest.approx(0.2)


def test_matches_brute_force():
    # same oracle, independent search: best-first against full enumeration
    rng = np.random.default_rng(41)
    for _ in range(15):
        inst = random_instance(rng, max_agents=2, max_hypotheses=5, max_domain=4)
        cap = default_cap(inst, "pac")
        vec = exact_min_cost(inst, "pac")
        ref = brute_force_min_cost(
            inst, cap, feasible=lambda v: pac_feasible(inst, v)
        )
        assert ref is not None
        assert vec.total_cost(inst) == pytest.approx(ref[0], abs=1e-12)
        assert pac_feasible(inst, vec)


def test_zero_vector_when_nothing_required():
    inst = make_instance(
        [[0, 0], [1, 0]],
        [[0.05, 0.95]],
        0.1,
        0.3,
    )
    vec = exact_min_cost(inst, "pac")
    assert tuple(vec) == (0,)


def test_cap_zero_raises_when_work_needed():
    inst = nonexistence_instance()
    with pytest.raises(SearchInfeasibleError):
        exact_min_cost(inst, "pac", cap=0)


def test_default_cap_covers_solo_solution():
    inst = free_rider_instance()
    cap = default_cap(inst, "pac")
    solo = max(
        individual_sample_complexity(inst, i) for i in range(inst.num_agents)
    )
    assert cap >= solo
    assert solo == 5


def test_custom_feasibility_predicate():
    inst = free_rider_instance()
    vec = exact_min_cost(inst, "pac", feasible=lambda ins, v: v.total() >= 3)
    # costs are equal, so the cheapest total-3 vector by heap order wins
    assert vec.total() == 3


def test_expected_objective():
    inst = free_rider_instance()
    vec = exact_min_cost(inst, "expected")
    assert expected_feasible(inst, vec)
    cheaper = np.array(tuple(vec))
    # optimality: no strictly cheaper vector in the box is feasible
    cap = default_cap(inst, "expected")
    best = brute_force_min_cost(
        inst, cap, feasible=lambda v: expected_feasible(inst, v)
    )
    assert best is not None
    assert vec.total_cost(inst) == pytest.approx(best[0], abs=1e-12)
    assert cheaper.sum() >= 0


def test_approximation_ratio_at_least_one():
    rng = np.random.default_rng(4242)
    for _ in range(8):
        inst = random_instance(rng, max_agents=2, max_hypotheses=4, max_domain=4)
        r = approximation_ratio(inst, "pac")
        assert r >= 1.0 - 1e-9


def test_bad_objective_rejected():
    inst = free_rider_instance()
    with pytest.raises(Exception):
        exact_min_cost(inst, "nonsense")
