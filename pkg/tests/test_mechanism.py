import numpy as np
import pytest

from pacalloc import (
    PaymentRule,
    ValidationError,
    check_pwyc_uniqueness,
    clarke_pivot_terms,
    free_rider_instance,
    make_instance,
    obliviousness_witness,
    payment_for,
    pwyc_payment,
    strategyproofness_audit,
    vcg_payment,
)


def test_pwyc_payment_formula():
    p = pwyc_payment((3, 1), (0.5, 2.0), constants=(0.1, -0.2))
    np.testing.assert_allclose(p, [1.6, 1.8])
    np.testing.assert_allclose(pwyc_payment((2,), (0.25,)), [0.5])


def test_vcg_with_clarke_pivots_is_zero_at_no_externality():
    # waiving either agent leaves (1, 1) optimal, so transfers vanish
    inst = free_rider_instance()
    pivots = clarke_pivot_terms(inst)
    pay = vcg_payment(inst, (1, 1), pivot_terms=pivots)
    np.testing.assert_allclose(pay, [0.0, 0.0], atol=1e-12)


def test_payment_table_lookup_and_miss():
    rule = PaymentRule("table", table={(1, 1): np.array([0.3, 0.4])})
    inst = free_rider_instance()
    np.testing.assert_allclose(payment_for(inst, rule, (1, 1)), [0.3, 0.4])
    with pytest.raises(ValidationError):
        payment_for(inst, rule, (2, 0))


def test_rule_kind_validated():
    with pytest.raises(ValidationError):
        PaymentRule("lottery")
    with pytest.raises(ValidationError):
        PaymentRule("table", table={})


def single_agent_instance():
    # one learner, full binary class over two points, lopsided mass
    hyps = [[0, 0], [1, 0], [0, 1], [1, 1]]
    return make_instance(hyps, [[0.7, 0.3]], 0.2, 0.1, costs=[0.1])


def test_audit_clean_at_cost_rates():
    """Reimbursement at cost makes utility report-independent."""
    inst = single_agent_instance()
    report = strategyproofness_audit(inst, 0.05, 0, PaymentRule("pwyc"))
    assert report.strategyproof
    assert report.best_misreport_utility <= report.truthful_utility + 1e-9


def test_audit_flags_double_rates():
    # paying twice the cost rewards inflating one's own allocation, and
    # overstating the rare point's mass does exactly that
    inst = single_agent_instance()
    rule = PaymentRule("pwyc", rates=(0.2,))
    report = strategyproofness_audit(inst, 0.05, 0, rule)
    assert not report.strategyproof
    assert report.best_misreport_utility > report.truthful_utility + 1e-9
    assert report.misreport is not None
    # the winning lie shifts mass toward the harder-to-learn point
    assert report.misreport[1] > 0.3


def test_audit_on_two_agents_truthful():
    inst = free_rider_instance()
    for i in range(2):
        report = strategyproofness_audit(inst, 0.1, i, PaymentRule("pwyc"))
        assert report.strategyproof


def pwyc_table(costs, keys, constants):
    table = {}
    for key in keys:
        table[key] = np.asarray(costs) * np.asarray(key, dtype=float) + np.asarray(
            constants
        )
    return table


def test_uniqueness_accepts_true_table():
    costs = (0.5, 1.5)
    keys = [(a, b) for a in range(3) for b in range(3)]
    table = pwyc_table(costs, keys, (0.25, -0.5))
    report = check_pwyc_uniqueness(table, costs)
    assert report.uniform
    np.testing.assert_allclose(report.constants, [0.25, -0.5])
    assert report.witness is None


def test_uniqueness_rejects_perturbed_entry():
    costs = (0.5, 1.5)
    keys = [(a, b) for a in range(3) for b in range(3)]
    table = pwyc_table(costs, keys, (0.0, 0.0))
    table[(1, 2)] = table[(1, 2)] + np.array([0.0, 0.07])
    report = check_pwyc_uniqueness(table, costs)
    assert not report.uniform
    key, neighbor, agent = report.witness
    assert agent == 1
    assert sum(abs(a - b) for a, b in zip(key, neighbor)) == 1
    assert (1, 2) in (key, neighbor)


def test_uniqueness_needs_connected_domain():
    costs = (1.0,)
    table = {(0,): np.array([0.0]), (2,): np.array([2.0])}
    with pytest.raises(ValidationError):
        check_pwyc_uniqueness(table, costs)


def test_witness_passes_at_listed_pair():
    report = obliviousness_witness(
        (155, 154), (156, 154), 18, 0.5, trials=4000, seed=3
    )
    assert report.box_ok
    assert report.binding_ok
    assert report.feasible_ok
    assert report.ok
    # the two environments share marginal sums but different splits
    assert not np.allclose(report.d1, report.d1_prime)


def test_witness_preconditions():
    with pytest.raises(ValidationError):
        obliviousness_witness((155, 154), (157, 154), 18, 0.5)  # gap 2
    with pytest.raises(ValidationError):
        obliviousness_witness((155, 154), (156, 154), 17, 0.5)  # class too small
    with pytest.raises(ValidationError):
        obliviousness_witness((155, 154), (156, 154), 18, 0.7)  # delta too big
    with pytest.raises(ValidationError):
        obliviousness_witness((10, 10), (11, 10), 18, 0.5)  # below sample floor
