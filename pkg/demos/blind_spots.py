"""A planner that ignores who asks for what must overshoot somewhere.

Two near-identical environments: same per-point sampling budgets bind,
but the weight sits on different points. Any allocation rule that only
sees the empirical mix cannot serve both environments at their exact
sample counts, and the witness report certifies the setup numerically.
"""

from pacalloc import obliviousness_witness


def main():
    report = obliviousness_witness(
        (155, 154), (156, 154), num_hypotheses=18, delta=0.5, trials=30_000, seed=1
    )
    print("paired environments over 19 points, 18 singleton rivals:")
    print(f"  agent 1 sees p1={report.d1[0]:.3e} q1={report.d1[1]:.3e}")
    print(f"  agent 2 sees p2={report.d2[0]:.3e} q2={report.d2[1]:.3e}")
    print(f"  swapped pair: p1'={report.d1_prime[0]:.3e} q1'={report.d1_prime[1]:.3e}")
    print()
    print(f"  special-point masses stay inside the half-uniform box: {report.box_ok}")
    print(f"  weighted sample budgets bind on both environments:     {report.binding_ok}")
    print(f"  stated counts succeed, one fewer sample still works:   {report.feasible_ok}")
    print()
    verdict = "holds" if report.ok else "fails"
    print(f"witness {verdict}: both environments demand the same totals from")
    print("an allocation rule that cannot tell them apart, yet their exact")
    print("requirements differ, so no oblivious rule is simultaneously tight.")


if __name__ == "__main__":
    main()
