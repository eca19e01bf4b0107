import numpy as np
import pytest

from pacalloc import (
    AgentSpec,
    ContributionVector,
    Domain,
    Hypothesis,
    HypothesisClass,
    ValidationError,
    disagreement_mass,
    disagreement_region,
    exceeds_epsilon,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    make_instance,
    save_instance,
    unacceptable_hypotheses,
    within_delta,
)


def small_instance():
    hyps = [[0, 0, 0], [1, 0, 0], [0, 1, 1]]
    dists = [[0.5, 0.3, 0.2], [0.2, 0.2, 0.6]]
    return make_instance(hyps, dists, 0.25, 0.1, costs=[1.0, 2.0])


def test_shapes_and_accessors():
    inst = small_instance()
    assert inst.num_agents == 2
    assert inst.num_hypotheses == 3
    assert inst.domain.size == 3
    assert inst.distribution_matrix().shape == (2, 3)
    np.testing.assert_allclose(inst.costs(), [1.0, 2.0])


def test_epsilon_delta_boundaries_are_inclusive():
    # mass exactly epsilon is acceptable, failure exactly delta passes
    assert not exceeds_epsilon(0.25, 0.25)
    assert exceeds_epsilon(0.25 + 1e-9, 0.25)
    assert within_delta(0.1, 0.1)
    assert not within_delta(0.1 + 1e-9, 0.1)


def test_disagreement_region_and_mass():
    h1 = Hypothesis(np.array([0, 0, 0], dtype=np.uint8))
    h2 = Hypothesis(np.array([1, 0, 1], dtype=np.uint8))
    region = disagreement_region(h1, h2)
    assert region.dtype == bool
    assert list(region) == [True, False, True]
    assert disagreement_mass(np.array([0.5, 0.3, 0.2]), h1, h2) == pytest.approx(0.7)


def test_unacceptable_hypotheses():
    inst = small_instance()
    # against target 0 under agent 0: rival 1 has mass 0.5, rival 2 mass 0.5
    bad = unacceptable_hypotheses(inst, 0, 0)
    assert bad == [1, 2]


def test_distribution_must_sum_to_one():
    with pytest.raises(ValidationError):
        AgentSpec(np.array([0.4, 0.4]))
    with pytest.raises(ValidationError):
        AgentSpec(np.array([0.5, -0.1, 0.6]))


def test_cost_must_be_positive():
    with pytest.raises(ValidationError):
        AgentSpec(np.array([1.0]), cost=0.0)
    with pytest.raises(ValidationError):
        AgentSpec(np.array([1.0]), cost=float("nan"))


def test_epsilon_delta_open_interval():
    hyps = [[0], [1]]
    with pytest.raises(ValidationError):
        make_instance(hyps, [[1.0]], 0.0, 0.5)
    with pytest.raises(ValidationError):
        make_instance(hyps, [[1.0]], 0.5, 1.0)


def test_duplicate_hypotheses_rejected():
    with pytest.raises(ValidationError):
        make_instance([[0, 1], [0, 1]], [[0.5, 0.5]], 0.2, 0.2)


def test_hypothesis_class_needs_consistent_lengths():
    with pytest.raises(ValidationError):
        HypothesisClass(
            (
                Hypothesis(np.array([0, 1], dtype=np.uint8)),
                Hypothesis(np.array([0, 1, 0], dtype=np.uint8)),
            )
        )


def test_contribution_vector():
    v = ContributionVector((2, 0, 3))
    assert v.total() == 5
    assert tuple(v.replace(1, 4)) == (2, 4, 3)
    inst = small_instance()
    w = ContributionVector((1, 2))
    assert w.total_cost(inst) == pytest.approx(1.0 + 4.0)
    with pytest.raises(ValidationError):
        ContributionVector((1, -1))


def test_round_trip_dict():
    inst = small_instance()
    again = instance_from_dict(instance_to_dict(inst))
    assert again.epsilon == inst.epsilon
    assert again.delta == inst.delta
    np.testing.assert_allclose(
        again.distribution_matrix(), inst.distribution_matrix()
    )
    np.testing.assert_array_equal(
        again.hypothesis_class.label_matrix(), inst.hypothesis_class.label_matrix()
    )


def test_round_trip_file(tmp_path):
    inst = small_instance()
    path = tmp_path / "inst.json"
    save_instance(inst, path)
    again = load_instance(path)
    np.testing.assert_allclose(again.costs(), inst.costs())
    assert again.num_hypotheses == inst.num_hypotheses


def test_domain_validation():
    with pytest.raises(ValidationError):
        Domain(0)
