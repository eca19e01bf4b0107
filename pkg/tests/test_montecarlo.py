import numpy as np
import pytest

from pacalloc import (
    ValidationError,
    expected_erm_error,
    free_rider_instance,
    monte_carlo_expected_error,
    monte_carlo_failure_probability,
    monte_carlo_pac_failure,
    nonexistence_instance,
    pac_failure_probability,
)


def test_same_seed_reproduces():
    inst = free_rider_instance()
    a = monte_carlo_pac_failure(inst, (2, 1), 1, 0, 20_000, seed=11)
    b = monte_carlo_pac_failure(inst, (2, 1), 1, 0, 20_000, seed=11)
    assert a.estimate == b.estimate
    assert a.standard_error == b.standard_error
    c = monte_carlo_pac_failure(inst, (2, 1), 1, 0, 20_000, seed=12)
    assert c.estimate != a.estimate


def test_estimate_near_exact():
    inst = nonexistence_instance()
    exact = float(pac_failure_probability(inst, (1, 1, 0), 0, 0))
    est = monte_carlo_pac_failure(inst, (1, 1, 0), 0, 0, 200_000, seed=5)
    assert abs(est.estimate - exact) <= 5 * est.standard_error + 1e-12
    assert est.trials == 200_000
    assert est.seed == 5
    assert float(est) == est.estimate


def test_zero_failure_gives_zero_se():
    # no bad rivals anywhere: estimator must report exactly zero
    inst = free_rider_instance()
    est = monte_carlo_pac_failure(inst, (40, 40), 0, 0, 5_000, seed=2)
    assert est.estimate == 0.0
    assert est.standard_error == 0.0


def test_trials_validated():
    inst = free_rider_instance()
    with pytest.raises(ValidationError):
        monte_carlo_pac_failure(inst, (1, 1), 0, 0, 0)


def test_plain_float_front_end():
    inst = free_rider_instance()
    value = monte_carlo_failure_probability(inst, (2, 2), 0, 0, 10_000, seed=9)
    assert 0.0 <= value <= 1.0


def test_expected_error_estimate_near_exact():
    inst = nonexistence_instance()
    exact = expected_erm_error(inst, (1, 1, 1), 0, 0)
    est = monte_carlo_expected_error(inst, (1, 1, 1), 0, 0, 200_000, seed=21)
    assert est == pytest.approx(exact, abs=0.01)
