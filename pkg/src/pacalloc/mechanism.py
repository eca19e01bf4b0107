"""Payment rules over planned allocations and their incentive analysis.

The mechanism asks each agent to report a distribution, plans the
sample allocation from the reports, and pays each agent according to a
rule. Reimbursing exactly cost times assigned count plus a constant
makes utilities independent of the report except through the benefit
indicator, which truthful reporting maximizes; the audit here verifies
that numerically on a misreport grid, and the uniqueness checker
verifies that a payment table has that form and no other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .exact import exact_min_cost
from .instances import AgentSpec, ContributionVector, Instance, make_instance
from .montecarlo import monte_carlo_estimates
from .oracles import agent_requirement_met
from .planner import solve_pac_allocation

SLACK_TOL = 1e-9


@dataclass(frozen=True)
class PaymentRule:
    """One of three payment rule shapes.

    kind "pwyc": pay rate times assigned count plus a constant per
    agent; rates default to the instance costs. kind "vcg": pay the
    welfare of the others at the chosen vector plus a report-free
    pivot term. kind "table": explicit counts-to-payments lookup.
    """

    kind: str
    constants: tuple | None = None
    rates: tuple | None = None
    pivot_terms: tuple | None = None
    table: dict | None = None

    def __post_init__(self):
        if self.kind not in ("pwyc", "vcg", "table"):
            raise ValidationError("payment rule kind must be pwyc, vcg, or table")
        if self.kind == "table" and not self.table:
            raise ValidationError("table payment rule needs a non-empty table")


def pwyc_payment(counts, costs, constants=None) -> np.ndarray:
    """Per-agent payment: cost times count plus an additive constant."""
    counts = np.asarray(tuple(counts), dtype=float)
    costs = np.asarray(costs, dtype=float)
    if constants is None:
        constants = np.zeros_like(costs)
    return costs * counts + np.asarray(constants, dtype=float)


def vcg_payment(instance: Instance, counts, pivot_terms=None) -> np.ndarray:
    """Others' welfare at the vector, shifted by report-free pivots.

    At a feasible vector every benefit indicator is one, so the
    payment to agent i is (k - 1) minus the others' contribution cost,
    plus the pivot term.
    """
    counts = np.asarray(tuple(counts), dtype=float)
    costs = instance.costs()
    k = instance.num_agents
    if pivot_terms is None:
        pivot_terms = np.zeros(k)
    pivot_terms = np.asarray(pivot_terms, dtype=float)
    spent = costs * counts
    return (k - 1.0) - (spent.sum() - spent) + pivot_terms


def clarke_pivot_terms(instance: Instance) -> np.ndarray:
    """Pivot terms charging each agent its externality.

    The term for agent i is the others' best attainable welfare when
    i's requirement is waived, negated into the vcg_payment convention
    so that the total payment equals the welfare difference with and
    without agent i.
    """
    costs = instance.costs()
    k = instance.num_agents
    terms = np.zeros(k)
    for i in range(k):

        def waived(inst, vec, skip=i):
            return all(
                agent_requirement_met(inst, vec, j)
                for j in range(inst.num_agents)
                if j != skip
            )

        reduced = exact_min_cost(instance, "pac", feasible=waived)
        spent = costs * np.asarray(tuple(reduced), dtype=float)
        terms[i] = -(k - 1.0) + (spent.sum() - spent[i])
    return terms


def payment_for(instance: Instance, rule: PaymentRule, counts) -> np.ndarray:
    """Evaluate a payment rule at a contribution vector."""
    key = tuple(int(x) for x in counts)
    if rule.kind == "pwyc":
        rates = instance.costs() if rule.rates is None else rule.rates
        return pwyc_payment(key, rates, rule.constants)
    if rule.kind == "vcg":
        return vcg_payment(instance, key, rule.pivot_terms)
    if key not in rule.table:
        raise ValidationError(f"payment table has no entry for {key}")
    return np.asarray(rule.table[key], dtype=float)


# ---------------------------------------------------------------------------
# strategyproofness audit


@dataclass(frozen=True, eq=False)
class AuditReport:
    """Outcome of a misreport sweep for one agent."""

    agent_index: int
    truthful_utility: float
    best_misreport_utility: float
    misreport: np.ndarray | None
    strategyproof: bool
    grid_step: float
    num_misreports: int


def _mechanism_utility(instance: Instance, rule: PaymentRule, counts, i: int) -> float:
    met = agent_requirement_met(instance, counts, i)
    benefit = 1.0 if met else 0.0
    pay = float(payment_for(instance, rule, counts)[i])
    return benefit - instance.agents[i].cost * int(counts[i]) + pay


def _with_report(instance: Instance, agent_index: int, distribution) -> Instance:
    agents = list(instance.agents)
    agents[agent_index] = AgentSpec(
        np.asarray(distribution, dtype=float), agents[agent_index].cost
    )
    return Instance(
        domain=instance.domain,
        hypothesis_class=instance.hypothesis_class,
        agents=tuple(agents),
        epsilon=instance.epsilon,
        delta=instance.delta,
    )


def _grid_misreports(distribution: np.ndarray, step: float):
    """All transfers of a whole number of grid steps between two points.

    Transfers that would drive a coordinate negative are skipped, so
    every yielded vector is again a distribution with the same total.
    """
    n = distribution.shape[0]
    for a in range(n):
        max_steps = int(math.floor(distribution[a] / step + 1e-12))
        for b in range(n):
            if a == b:
                continue
            for k in range(1, max_steps + 1):
                moved = distribution.copy()
                moved[a] = max(moved[a] - k * step, 0.0)
                moved[b] = moved[b] + k * step
                yield moved


def strategyproofness_audit(
    instance: Instance, report_grid_step: float, agent_index: int, payment: PaymentRule
) -> AuditReport:
    """Compare truthful utility against every grid misreport.

    The allocation is always planned from the reported instance; the
    benefit indicator and the agent's sampling cost are evaluated on
    the true one. Ties keep the first misreport in grid order.
    """
    step = float(report_grid_step)
    if not 0.0 < step <= 1.0:
        raise ValidationError("report grid step must lie in (0, 1]")
    i = int(agent_index)
    if not 0 <= i < instance.num_agents:
        raise ValidationError("agent index out of range")
    truthful_alloc = solve_pac_allocation(instance)
    truthful = _mechanism_utility(instance, payment, truthful_alloc, i)
    best = -math.inf
    best_report = None
    count = 0
    for reported in _grid_misreports(instance.agents[i].distribution, step):
        count += 1
        alloc = solve_pac_allocation(_with_report(instance, i, reported))
        value = _mechanism_utility(instance, payment, alloc, i)
        if value > best:
            best = value
            best_report = reported
    return AuditReport(
        agent_index=i,
        truthful_utility=truthful,
        best_misreport_utility=best,
        misreport=best_report,
        strategyproof=truthful + SLACK_TOL >= best,
        grid_step=step,
        num_misreports=count,
    )


# ---------------------------------------------------------------------------
# uniqueness of the reimbursement form


@dataclass(frozen=True, eq=False)
class UniquenessReport:
    """Whether a payment table is cost-times-count plus a constant."""

    uniform: bool
    constants: np.ndarray | None
    witness: tuple | None


def check_pwyc_uniqueness(table, costs) -> UniquenessReport:
    """Decide whether a payment table has the reimbursement form.

    Subtracting cost times count from each payment must leave a
    constant. On a connected table domain it is enough to compare the
    residual across every unit step; the first differing edge is
    returned as a witness (m, m adjacent, agent index).
    """
    if isinstance(table, PaymentRule):
        if table.kind != "table":
            raise ValidationError("uniqueness check expects a table payment rule")
        table = table.table
    if not table:
        raise ValidationError("payment table is empty")
    costs = np.asarray(costs, dtype=float)
    k = costs.shape[0]
    keys = sorted(tuple(int(x) for x in key) for key in table)
    entries = {}
    for key in keys:
        vec = np.asarray(table[tuple(key)] if tuple(key) in table else table[key], dtype=float)
        if vec.shape != (k,):
            raise ValidationError("payment entries must have one value per agent")
        entries[tuple(key)] = vec
    key_set = set(entries)

    def neighbors(key):
        for j in range(k):
            for d in (-1, 1):
                other = key[:j] + (key[j] + d,) + key[j + 1 :]
                if other in key_set:
                    yield other

    frontier = [keys[0]]
    reached = {keys[0]}
    while frontier:
        cur = frontier.pop()
        for other in neighbors(cur):
            if other not in reached:
                reached.add(other)
                frontier.append(other)
    if reached != key_set:
        raise ValidationError("payment table domain is not connected under unit steps")

    def slack(key):
        return entries[key] - costs * np.asarray(key, dtype=float)

    for key in keys:
        base = slack(key)
        for j in range(k):
            other = key[:j] + (key[j] + 1,) + key[j + 1 :]
            if other not in key_set:
                continue
            diff = np.abs(slack(other) - base)
            for i in range(k):
                if diff[i] > SLACK_TOL:
                    return UniquenessReport(False, None, (key, other, i))
    return UniquenessReport(True, slack(keys[0]).copy(), None)


# ---------------------------------------------------------------------------
# obliviousness counterexample generator


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """Two near-identical planning problems with different right answers.

    Both distribution pairs make the sample vector m (respectively the
    unit-step neighbor m_prime) exactly tight for the same confidence
    bar, while every individual mass stays inside a box that any
    allocation rule ignoring joint structure cannot tell apart.
    """

    m: tuple
    m_prime: tuple
    d1: np.ndarray
    d2: np.ndarray
    d1_prime: np.ndarray
    d2_prime: np.ndarray
    instance: Instance
    instance_prime: Instance
    box_ok: bool
    binding_ok: bool
    feasible_ok: bool
    details: dict = field(repr=False)

    @property
    def ok(self) -> bool:
        return self.box_ok and self.binding_ok and self.feasible_ok


def _witness_masses(m1: int, m2: int, alpha: float):
    p1 = alpha / (m1 * m2)
    q1 = (1.0 - 1.0 / m2) * alpha / m2
    p2 = (1.0 - 1.0 / m1) * alpha / m1
    q2 = alpha / (m1 * m2)
    return p1, p2, q1, q2


def _witness_distributions(m1: int, m2: int, n: int, alpha: float):
    p1, p2, q1, q2 = _witness_masses(m1, m2, alpha)
    if p1 + p2 >= 1.0 or q1 + q2 >= 1.0:
        raise ValidationError("special masses leave no room for the remainder")
    d1 = np.full(n, (1.0 - p1 - p2) / (n - 2))
    d1[0], d1[1] = p1, p2
    d2 = np.full(n, (1.0 - q1 - q2) / (n - 2))
    d2[0], d2[1] = q1, q2
    return d1, d2


def _witness_instance(d1, d2, n: int, alpha: float, m1: int, m2: int, delta: float):
    hyps = [np.zeros(n, dtype=np.int64)]
    for j in range(n):
        h = np.zeros(n, dtype=np.int64)
        h[j] = 1
        hyps.append(h)
    epsilon = alpha / (2.0 * m1 * m2)
    return make_instance(hyps, [d1, d2], epsilon, delta)


def _box_checks(p1, p2, q1, q2, n: int) -> dict:
    half = 1.0 / (2.0 * n) + 1e-12
    full = 1.0 / n + 1e-12
    return {
        "p_ordered": 0.0 < p1 <= p2 + 1e-15,
        "p_half": p2 <= half,
        "p_sum": p1 + p2 <= full,
        "q_ordered": 0.0 < q2 <= q1 + 1e-15,
        "q_half": q1 <= half,
        "q_sum": q1 + q2 <= full,
    }


def obliviousness_witness(
    m, m_prime, num_hypotheses: int, delta: float, trials: int = 100_000, seed: int = 0
) -> WitnessReport:
    """Build and certify a pair of two-agent planning problems.

    Preconditions are checked with named errors: two agents, a single
    unit step between m and m_prime, at least 18 hypotheses, delta at
    most one half, and every count at least 2 H log H. Certification
    covers the mass boxes, the tight linear rows (to relative slack
    1 / min(m)), and Monte Carlo feasibility of both m and m - 1 at
    four standard errors around delta.
    """
    m = tuple(int(x) for x in m)
    m_prime = tuple(int(x) for x in m_prime)
    if len(m) != 2 or len(m_prime) != 2:
        raise ValidationError("witness construction needs two-agent count vectors")
    if sum(abs(a - b) for a, b in zip(m, m_prime)) != 1:
        raise ValidationError("m and m_prime must differ by exactly one sample")
    h = int(num_hypotheses)
    if h < 18:
        raise ValidationError("num_hypotheses must be at least 18")
    delta = float(delta)
    if not 0.0 < delta <= 0.5:
        raise ValidationError("delta must lie in (0, 0.5]")
    floor = 2.0 * h * math.log(h)
    if min(min(m), min(m_prime)) < floor:
        raise ValidationError(
            f"every count must be at least 2 H log H = {floor:.2f}"
        )
    n = h - 1
    alpha = math.log(h / delta)

    d1, d2 = _witness_distributions(m[0], m[1], n, alpha)
    d1p, d2p = _witness_distributions(m_prime[0], m_prime[1], n, alpha)
    inst = _witness_instance(d1, d2, n, alpha, m[0], m[1], delta)
    inst_p = _witness_instance(d1p, d2p, n, alpha, m_prime[0], m_prime[1], delta)

    boxes = {
        "m": _box_checks(*_witness_masses(m[0], m[1], alpha), n),
        "m_prime": _box_checks(*_witness_masses(m_prime[0], m_prime[1], alpha), n),
    }
    box_ok = all(all(side.values()) for side in boxes.values())

    binding = []
    for counts, masses in ((m, _witness_masses(m[0], m[1], alpha)),
                           (m_prime, _witness_masses(m_prime[0], m_prime[1], alpha))):
        p1, p2, q1, q2 = masses
        tol = alpha / min(counts)
        for p, q in ((p1, q1), (p2, q2)):
            binding.append(abs(counts[0] * p + counts[1] * q - alpha) <= tol)
    binding_ok = all(binding)

    feasibility = []
    runs = [
        (inst, m),
        (inst, (m[0] - 1, m[1] - 1)),
        (inst_p, m_prime),
        (inst_p, (m_prime[0] - 1, m_prime[1] - 1)),
    ]
    for offset, (which, counts) in enumerate(runs):
        est = monte_carlo_estimates(which, counts, trials, seed + offset)
        se = np.sqrt(np.maximum(est * (1.0 - est), 0.0) / trials)
        margin = float((delta + 4.0 * se - est).min())
        feasibility.append({"counts": counts, "worst_margin": margin})
    feasible_ok = all(entry["worst_margin"] >= 0.0 for entry in feasibility)

    return WitnessReport(
        m=m,
        m_prime=m_prime,
        d1=d1,
        d2=d2,
        d1_prime=d1p,
        d2_prime=d2p,
        instance=inst,
        instance_prime=inst_p,
        box_ok=box_ok,
        binding_ok=binding_ok,
        feasible_ok=feasible_ok,
        details={"boxes": boxes, "binding": binding, "feasibility": feasibility},
    )
