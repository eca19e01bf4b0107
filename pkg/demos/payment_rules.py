"""Payment rules under the microscope: reimbursement versus padding.

Reimbursing each agent exactly their sampling cost makes the reported
distribution irrelevant to their utility, so lying never helps. Pad
the rate to double the cost and the audit finds profitable lies that
inflate the liar's own allocation.
"""

import numpy as np

from pacalloc import (
    PaymentRule,
    clarke_pivot_terms,
    free_rider_instance,
    make_instance,
    strategyproofness_audit,
    vcg_payment,
)


def one_agent_instance():
    hyps = [[0, 0], [1, 0], [0, 1], [1, 1]]
    return make_instance(hyps, [[0.7, 0.3]], 0.2, 0.1, costs=[0.1])


def main():
    inst = one_agent_instance()

    honest = strategyproofness_audit(inst, 0.05, 0, PaymentRule("pwyc"))
    print("pay-what-you-contribute at cost rates:")
    print(f"  truthful utility {honest.truthful_utility:.4f}, "
          f"best of {honest.num_misreports} misreports {honest.best_misreport_utility:.4f}"
          f" -> strategyproof: {honest.strategyproof}")

    padded = strategyproofness_audit(inst, 0.05, 0, PaymentRule("pwyc", rates=(0.2,)))
    print("same rule with doubled rates:")
    print(f"  truthful utility {padded.truthful_utility:.4f}, "
          f"best misreport {padded.best_misreport_utility:.4f}"
          f" -> strategyproof: {padded.strategyproof}")
    if padded.misreport is not None:
        print(f"  the winning lie reports {np.round(padded.misreport, 2)} "
              "instead of (0.7, 0.3), buying itself a bigger allocation")
    print()

    two = free_rider_instance()
    pivots = clarke_pivot_terms(two)
    pay = vcg_payment(two, (1, 1), pivot_terms=pivots)
    print("externality payments on the two-agent example at (1, 1):")
    print(f"  pivot terms {np.round(pivots, 4)}, payments {np.round(pay, 4)}")
    print("  dropping either agent leaves the same shared optimum, so")
    print("  nobody imposes an externality and both transfers vanish.")


if __name__ == "__main__":
    main()
