"""Contribution game: equilibria, dynamics, and the stability constructions."""

import math

import numpy as np
import pytest

from pacalloc import (
    ValidationError,
    agent_requirement_met,
    best_response,
    best_response_dynamics,
    enumerate_pure_ne,
    free_rider_instance,
    individual_caps,
    minimal_meeting_count,
    nonexistence_instance,
    pos_instance,
    price_of_stability,
    utility,
)


def test_free_rider_equilibria_exactly():
    inst = free_rider_instance()
    out = enumerate_pure_ne(inst)
    assert [tuple(v) for v in out.pure_ne] == [(0, 5), (1, 1), (5, 0)]
    assert out.best_ne_cost == pytest.approx(0.2)


def test_free_rider_pos_is_one():
    out = price_of_stability(free_rider_instance())
    assert out.opt_cost == pytest.approx(0.2)
    assert out.pos == pytest.approx(1.0)


def test_free_rider_lone_equilibrium_five_times_per_agent():
    # a lone contributor pays for 5 samples; sharing needs 1 each
    inst = free_rider_instance()
    caps = individual_caps(inst)
    assert caps == (5, 5)


def test_nonexistence_has_no_pure_ne():
    out = enumerate_pure_ne(nonexistence_instance())
    assert out.pure_ne == ()


def test_nonexistence_dynamics_cycle():
    out = best_response_dynamics(nonexistence_instance())
    assert out.pure_ne == ()
    assert "cycle" in out.note or "sweep limit" in out.note
    assert out.br_trace


def test_dynamics_converge_on_free_rider():
    out = best_response_dynamics(free_rider_instance(), start=(0, 0))
    assert out.note == "converged"
    assert len(out.pure_ne) == 1
    assert agent_requirement_met(
        free_rider_instance(), out.pure_ne[0], 0
    )


def test_utility_and_best_response():
    inst = free_rider_instance()
    # with the rival at 0, meeting the bar alone takes 5 samples
    assert minimal_meeting_count(inst, (0, 0), 0) == 5
    assert best_response(inst, (0, 0), 0) == 5
    # 1 - 5 * 0.1 = 0.5 beats staying at zero
    assert utility(inst, (5, 0), 0) == pytest.approx(0.5)
    assert utility(inst, (0, 0), 0) == pytest.approx(0.0)
    # with the rival at 1, a single sample suffices
    assert best_response(inst, (0, 1), 0) == 1


@pytest.fixture(scope="module")
def pos_small():
    return pos_instance(0.05, 0.5)


def test_pos_instance_frozen_small(pos_small):
    inst = pos_small
    assert inst.num_hypotheses == 20
    assert inst.domain.size == 21
    out = price_of_stability(inst)
    assert [tuple(v) for v in out.pure_ne] == [(63, 0)]
    assert out.pos == pytest.approx(63 / 13.7, abs=1e-9)
    anchor = (math.log(1 / 0.05) + math.log(2)) / math.log(2)
    assert 0.75 * anchor <= out.pos <= 1.25 * anchor


def test_pos_instance_validation():
    with pytest.raises(ValidationError):
        pos_instance(0.6, 0.5)
    with pytest.raises(ValidationError):
        pos_instance(0.05, 1.0)


def test_pos_instance_second_agent_free_rides(pos_small):
    # the rare-point agent is covered without sampling: no bad rival
    # exceeds epsilon for it, so its solo complexity is zero
    caps = individual_caps(pos_small)
    assert caps[1] == 0
    assert caps[0] == 63
