"""Exact failure probabilities versus sampling, side by side.

The exact oracle expands the union of rival-survival events by
inclusion-exclusion over disagreement regions; the estimator just
simulates the whole pipeline. They should land within a few standard
errors of each other at every counts vector.
"""

from pacalloc import (
    monte_carlo_pac_failure,
    nonexistence_instance,
    pac_failure_probability,
    pac_feasible,
    worst_expected_error,
)


def main():
    inst = nonexistence_instance()
    print("three agents on a three-point cycle, epsilon 1/3, delta 2/3")
    print()
    print("counts      exact      sampled    std err   feasible")
    for counts in [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 2, 2), (3, 3, 3)]:
        worst = max(
            float(pac_failure_probability(inst, counts, t, i))
            for t in range(inst.num_hypotheses)
            for i in range(inst.num_agents)
        )
        est = monte_carlo_pac_failure(inst, counts, 0, 0, 50_000, seed=13)
        exact0 = float(pac_failure_probability(inst, counts, 0, 0))
        ok = pac_feasible(inst, counts)
        print(
            f"{str(counts):10s}  {exact0:.5f}    {est.estimate:.5f}"
            f"    {est.standard_error:.5f}   {ok}"
        )
        assert abs(est.estimate - exact0) < 5 * est.standard_error + 1e-9
    print()
    err = worst_expected_error(inst, (2, 2, 2))
    print(f"worst expected pick error at (2, 2, 2): {err:.5f}")


if __name__ == "__main__":
    main()
