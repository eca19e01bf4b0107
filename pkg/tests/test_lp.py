import numpy as np
import pytest

from pacalloc import LinearProgram, SolverError, ValidationError, solve_linear_program
from pacalloc.bruteforce import brute_force_lp_minimize


def test_tiny_covering_lp():
    # min x + y  s.t.  x + 2y >= 4, 3x + y >= 6, x, y >= 0
    lp = LinearProgram(
        costs=np.array([1.0, 1.0]),
        lhs=np.array([[1.0, 2.0], [3.0, 1.0]]),
        rhs=np.array([4.0, 6.0]),
    )
    sol = solve_linear_program(lp)
    assert sol.status == "optimal"
    np.testing.assert_allclose(sol.x, [1.6, 1.2], atol=1e-9)
    assert sol.objective == pytest.approx(2.8, abs=1e-9)
    assert sol.duality_gap <= 1e-6


def test_no_rows_means_zero():
    lp = LinearProgram(
        costs=np.array([2.0, 5.0]),
        lhs=np.zeros((0, 2)),
        rhs=np.zeros(0),
    )
    sol = solve_linear_program(lp)
    assert sol.status == "optimal"
    np.testing.assert_allclose(sol.x, [0.0, 0.0])
    assert sol.objective == 0.0


def test_infeasible_detected():
    # nonnegative combination of nonpositive coefficients cannot reach 1
    lp = LinearProgram(
        costs=np.array([1.0]),
        lhs=np.array([[-1.0]]),
        rhs=np.array([1.0]),
    )
    sol = solve_linear_program(lp)
    assert sol.status == "infeasible"


def test_matches_brute_force_on_random_covers():
    rng = np.random.default_rng(5150)
    for _ in range(25):
        nvar = rng.integers(1, 4)
        nrow = rng.integers(1, 5)
        lhs = rng.uniform(0.0, 2.0, size=(nrow, nvar))
        lhs[lhs < 0.3] = 0.0
        # make each row coverable by at least one variable
        for r in range(nrow):
            if not lhs[r].any():
                lhs[r, rng.integers(0, nvar)] = 1.0
        rhs = rng.uniform(0.5, 3.0, size=nrow)
        costs = rng.uniform(0.2, 2.0, size=nvar)
        lp = LinearProgram(costs=costs, lhs=lhs, rhs=rhs)
        sol = solve_linear_program(lp)
        assert sol.status == "optimal"
        ref = brute_force_lp_minimize(costs, lhs, rhs)
        assert ref is not None
        assert sol.objective == pytest.approx(ref[1], abs=1e-6)
        assert np.all(lhs @ sol.x >= rhs - 1e-7)


def test_shape_validation():
    with pytest.raises(ValidationError):
        LinearProgram(
            costs=np.array([1.0, 1.0]),
            lhs=np.array([[1.0]]),
            rhs=np.array([1.0]),
        )


def test_labels_preserved():
    lp = LinearProgram(
        costs=np.array([1.0]),
        lhs=np.array([[2.0]]),
        rhs=np.array([1.0]),
        labels=((0, 1),),
    )
    assert lp.labels == ((0, 1),)
    assert lp.num_rows == 1
    assert lp.num_vars == 1
