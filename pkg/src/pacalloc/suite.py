"""Eleven self-checks, each reduced to a single pass or fail verdict.

Every check fixes its own random stream, derived from the seed plus
the check number, so results are reproducible and independent of the
order in which checks run. The quick flag shrinks trial counts without
changing what is being checked.
"""

from __future__ import annotations

import dataclasses
import itertools
import math

import numpy as np

from . import bruteforce
from .exact import exact_min_cost
from .game import (
    enumerate_pure_ne,
    free_rider_instance,
    nonexistence_instance,
    pos_instance,
    price_of_stability,
)
from .instances import ContributionVector
from .lp import solve_linear_program
from .mechanism import (
    PaymentRule,
    check_pwyc_uniqueness,
    obliviousness_witness,
    strategyproofness_audit,
)
from .montecarlo import monte_carlo_failure_probability
from .oracles import expected_feasible, pac_failure_probability, pac_feasible
from .planner import (
    approximation_ratio_bound,
    build_expected_lp,
    build_pac_lp,
    ceil_counts,
    expected_to_pac_scaling,
    solve_expected_allocation,
)
from .random_instances import (
    random_counts,
    random_instance,
    random_set_cover,
)
from .reduction import (
    brute_force_set_cover,
    min_eliminating_sample_count,
    set_cover_to_pac,
)


def _result(index: int, name: str, passed: bool, detail: str) -> dict:
    return {"criterion": index, "name": name, "passed": bool(passed), "detail": detail}


def _vectors_up_to(k: int, total: int):
    for counts in itertools.product(range(total + 1), repeat=k):
        if sum(counts) <= total:
            yield counts


def criterion_1(seed: int = 42, quick: bool = False) -> dict:
    """Rounded LP plans are feasible and the LP sits under the log bound."""
    rng = np.random.default_rng([seed, 1])
    rounds = 30 if quick else 100
    violations = []
    worst = 0.0
    for idx in range(rounds):
        inst = random_instance(
            rng, max_domain=8, epsilons=(0.1, 0.2), deltas=(0.1,)
        )
        sol = solve_linear_program(build_pac_lp(inst))
        plan = ContributionVector(ceil_counts(sol.x))
        if not pac_feasible(inst, plan):
            violations.append(f"round {idx}: rounded plan misses the bar")
        opt_cost = exact_min_cost(inst, "pac").total_cost(inst)
        bound = approximation_ratio_bound(inst)
        if opt_cost > 1e-12:
            ratio = sol.objective / opt_cost
            worst = max(worst, ratio / bound)
            if ratio > bound + 1e-9:
                violations.append(
                    f"round {idx}: LP/OPT {ratio:.4f} above bound {bound:.4f}"
                )
        elif sol.objective > 1e-9:
            violations.append(f"round {idx}: zero optimum but positive LP value")
    detail = (
        f"{rounds} instances; worst LP/OPT fraction of bound {worst:.4f}; "
        f"{len(violations)} violations"
    )
    if violations:
        detail += "; first: " + violations[0]
    return _result(1, "lp-approximation-bound", not violations, detail)


def criterion_2(seed: int = 42, quick: bool = False) -> dict:
    """The three-agent cycle instance has no pure equilibrium."""
    outcome = enumerate_pure_ne(nonexistence_instance())
    detail = f"{len(outcome.pure_ne)} pure equilibria in the dominance box"
    return _result(2, "equilibrium-nonexistence", not outcome.pure_ne, detail)


def criterion_3(seed: int = 42, quick: bool = False) -> dict:
    """Lone-contributor equilibria should overpay fivefold; they do not.

    The symmetric two-point instance has equilibria at one-each and at
    five-alone. Five-alone costs 2.5 times the optimum, which is the
    true gap of this construction, so the fivefold requirement fails
    and is reported honestly rather than patched.
    """
    inst = free_rider_instance()
    outcome = enumerate_pure_ne(inst)
    found = tuple(tuple(v) for v in outcome.pure_ne)
    shared_ok = (1, 1) in found
    opt = exact_min_cost(inst, "pac")
    opt_cost = opt.total_cost(inst)
    lone = [
        v.total_cost(inst)
        for v in outcome.pure_ne
        if 0 in tuple(v) and v.total() > 0
    ]
    ratio = min(lone) / opt_cost if lone and opt_cost > 0 else math.inf
    passed = shared_ok and bool(lone) and ratio >= 5.0 - 1e-9
    detail = (
        f"equilibria {found}; (1, 1) {'is' if shared_ok else 'is not'} an "
        f"equilibrium; optimum {tuple(opt)} costs {opt_cost:.2f}; cheapest "
        f"lone-contributor equilibrium costs "
        f"{min(lone) if lone else math.nan:.2f}, ratio {ratio:.2f} vs required 5"
    )
    return _result(3, "free-rider-gap", passed, detail)


def criterion_4(seed: int = 42, quick: bool = False) -> dict:
    """Stability price sits within 25 percent of the log ratio and grows."""
    measured = []
    problems = []
    for eps in (0.05, 0.02):
        inst = pos_instance(eps, 0.5)
        out = price_of_stability(inst)
        anchor = (math.log(1.0 / eps) + math.log(2.0)) / math.log(2.0)
        if out.pos is None:
            problems.append(f"eps {eps}: no pure equilibrium")
            measured.append((eps, None, anchor))
            continue
        if not (0.75 * anchor - 1e-9 <= out.pos <= 1.25 * anchor + 1e-9):
            problems.append(
                f"eps {eps}: ratio {out.pos:.4f} outside 25% of {anchor:.4f}"
            )
        measured.append((eps, out.pos, anchor))
    if len(measured) == 2 and None not in (measured[0][1], measured[1][1]):
        if not measured[1][1] > measured[0][1] + 1e-9:
            problems.append("ratio did not grow as epsilon shrank")
    detail = "; ".join(
        f"eps {eps}: ratio {pos if pos is None else format(pos, '.4f')}"
        f" vs anchor {anchor:.4f}"
        for eps, pos, anchor in measured
    )
    if problems:
        detail += "; " + "; ".join(problems)
    return _result(4, "stability-price-band", not problems, detail)


def criterion_5(seed: int = 42, quick: bool = False) -> dict:
    """Exact oracle matches exhaustive enumeration and Monte Carlo."""
    rng = np.random.default_rng([seed, 5])
    mismatches = 0
    checked = 0
    max_gap = 0.0
    named = [(nonexistence_instance(), 3), (free_rider_instance(), 4)]
    randoms = [
        (
            random_instance(
                rng,
                max_agents=2,
                max_hypotheses=5,
                max_domain=4,
                epsilons=(0.2, 0.34),
                deltas=(0.3, 0.5),
            ),
            4 if quick else 5,
        )
        for _ in range(8 if quick else 12)
    ]
    for inst, total in named + randoms:
        for counts in _vectors_up_to(inst.num_agents, total):
            for t in range(inst.num_hypotheses):
                for i in range(inst.num_agents):
                    exact = float(pac_failure_probability(inst, counts, t, i))
                    ref = bruteforce.brute_force_failure_probability(
                        inst, counts, t, i
                    )
                    checked += 1
                    gap = abs(exact - ref)
                    max_gap = max(max_gap, gap)
                    if gap > 1e-12:
                        mismatches += 1
    mc_rounds = 30 if quick else 100
    trials = 20_000 if quick else 100_000
    hits = 0
    for _ in range(mc_rounds):
        inst = random_instance(rng, max_hypotheses=6, max_domain=6)
        counts = random_counts(rng, inst.num_agents, 6)
        t = int(rng.integers(0, inst.num_hypotheses))
        i = int(rng.integers(0, inst.num_agents))
        p = float(pac_failure_probability(inst, counts, t, i))
        est = monte_carlo_failure_probability(
            inst, counts, t, i, trials, seed=int(rng.integers(0, 2**31))
        )
        se = math.sqrt(p * (1.0 - p) / trials)
        if abs(est - p) <= 4.0 * se + 1e-15:
            hits += 1
    mc_ok = hits >= mc_rounds - 1
    passed = mismatches == 0 and mc_ok
    detail = (
        f"{checked} exhaustive comparisons, max gap {max_gap:.2e}, "
        f"{mismatches} mismatches; Monte Carlo within 4 standard errors "
        f"{hits}/{mc_rounds}"
    )
    return _result(5, "oracle-agreement", passed, detail)


def criterion_6(seed: int = 42, quick: bool = False) -> dict:
    """More samples never raise a failure chance or break feasibility."""
    rng = np.random.default_rng([seed, 6])
    rounds = 150 if quick else 500
    breaks = 0
    for _ in range(rounds):
        inst = random_instance(rng, max_hypotheses=7, max_domain=7)
        k = inst.num_agents
        base = random_counts(rng, k, 5)
        inc = random_counts(rng, k, 3)
        if sum(inc) == 0:
            spot = int(rng.integers(0, k))
            inc = inc[:spot] + (1,) + inc[spot + 1 :]
        bigger = tuple(b + d for b, d in zip(base, inc))
        t = int(rng.integers(0, inst.num_hypotheses))
        i = int(rng.integers(0, k))
        f_base = float(pac_failure_probability(inst, base, t, i))
        f_big = float(pac_failure_probability(inst, bigger, t, i))
        if f_big > f_base + 1e-12:
            breaks += 1
        if pac_feasible(inst, base) and not pac_feasible(inst, bigger):
            breaks += 1
    detail = f"{rounds} random (instance, counts, increment) triples; {breaks} monotonicity breaks"
    return _result(6, "monotonicity", breaks == 0, detail)


def criterion_7(seed: int = 42, quick: bool = False) -> dict:
    """Reimbursement audits come back clean; over-reimbursement is caught."""
    rng = np.random.default_rng([seed, 7])
    rounds = 8 if quick else 20
    dirty_clean = 0
    flagged = 0
    for _ in range(rounds):
        inst = random_instance(
            rng, max_hypotheses=6, max_domain=6, epsilons=(0.2,), deltas=(0.1, 0.2)
        )
        agent = int(rng.integers(0, inst.num_agents))
        clean = strategyproofness_audit(inst, 0.05, agent, PaymentRule("pwyc"))
        if not clean.strategyproof:
            dirty_clean += 1
        doubled = PaymentRule("pwyc", rates=tuple(2.0 * c for c in inst.costs()))
        rich = strategyproofness_audit(inst, 0.05, agent, doubled)
        if not rich.strategyproof:
            flagged += 1
    passed = dirty_clean == 0 and flagged >= 1
    detail = (
        f"{rounds} audited instances; {dirty_clean} false alarms under "
        f"reimbursement; over-reimbursement flagged on {flagged}"
    )
    return _result(7, "payment-audit", passed, detail)


def criterion_8(seed: int = 42, quick: bool = False) -> dict:
    """Uniqueness check accepts true tables, rejects any perturbed one."""
    rng = np.random.default_rng([seed, 8])
    rounds = 30 if quick else 100
    failures = []
    for idx in range(rounds):
        k = int(rng.integers(1, 4))
        while True:
            dims = [int(rng.integers(1, 4)) for _ in range(k)]
            if math.prod(dims) >= 2:
                break
        offsets = [int(rng.integers(0, 5)) for _ in range(k)]
        costs = rng.uniform(0.1, 2.0, size=k)
        consts = rng.uniform(-1.0, 1.0, size=k)
        keys = list(
            itertools.product(*(range(o, o + d) for o, d in zip(offsets, dims)))
        )
        table = {
            key: costs * np.asarray(key, dtype=float) + consts for key in keys
        }
        rep = check_pwyc_uniqueness(table, costs)
        if not rep.uniform or np.abs(rep.constants - consts).max() > 1e-9:
            failures.append(f"round {idx}: true table rejected")
            continue
        victim = keys[int(rng.integers(0, len(keys)))]
        agent = int(rng.integers(0, k))
        bumped = {key: vec.copy() for key, vec in table.items()}
        bumped[victim][agent] += float(rng.uniform(0.001, 0.5)) * (
            1.0 if rng.random() < 0.5 else -1.0
        )
        rep2 = check_pwyc_uniqueness(bumped, costs)
        if rep2.uniform or rep2.witness is None:
            failures.append(f"round {idx}: perturbed table accepted")
            continue
        a, b, i = rep2.witness
        gap = abs(
            (bumped[b][i] - costs[i] * b[i]) - (bumped[a][i] - costs[i] * a[i])
        )
        adjacent = sum(abs(x - y) for x, y in zip(a, b)) == 1
        if not (a in bumped and b in bumped and adjacent and gap > 1e-9):
            failures.append(f"round {idx}: witness does not certify the break")
    detail = f"{rounds} table trials; {len(failures)} failures"
    if failures:
        detail += "; first: " + failures[0]
    return _result(8, "payment-uniqueness", not failures, detail)


def criterion_9(seed: int = 42, quick: bool = False) -> dict:
    """Reduction answer equals the exhaustive minimum cover size."""
    rng = np.random.default_rng([seed, 9])
    rounds = 10 if quick else 20
    wrong = []
    for idx in range(rounds):
        cover = random_set_cover(rng)
        inst = set_cover_to_pac(cover)
        got = min_eliminating_sample_count(inst, cover.num_subsets)
        want = brute_force_set_cover(cover)
        if got != want:
            wrong.append(f"round {idx}: {got} != {want}")
    detail = f"{rounds} random covering problems; {len(wrong)} disagreements"
    if wrong:
        detail += "; first: " + wrong[0]
    return _result(9, "cover-reduction", not wrong, detail)


def criterion_10(seed: int = 42, quick: bool = False) -> dict:
    """Expected-error plans verify, and sharpened optima scale across."""
    rng = np.random.default_rng([seed, 10])
    rounds = 10 if quick else 20
    problems = []
    for idx in range(rounds):
        inst = random_instance(
            rng,
            max_agents=2,
            max_hypotheses=6,
            max_domain=6,
            epsilons=(0.2, 0.3),
            deltas=(0.2,),
        )
        plan = solve_expected_allocation(inst)
        if not expected_feasible(inst, plan):
            problems.append(f"round {idx}: rounded expected plan infeasible")
        sharp = dataclasses.replace(inst, epsilon=inst.epsilon / 4.0)
        m_star = exact_min_cost(sharp, "expected")
        factor = expected_to_pac_scaling(inst)
        scaled = factor * np.asarray(tuple(m_star), dtype=float)
        lp = build_expected_lp(inst)
        if lp.num_rows and (lp.lhs @ scaled < lp.rhs - 1e-9).any():
            problems.append(f"round {idx}: scaled sharp optimum misses an LP row")
    detail = f"{rounds} instances; {len(problems)} problems"
    if problems:
        detail += "; first: " + problems[0]
    return _result(10, "expected-plan", not problems, detail)


def criterion_11(seed: int = 42, quick: bool = False) -> dict:
    """Witness pairs certify boxes, tight rows, and feasibility."""
    pairs = (
        ((155, 154), (156, 154)),
        ((160, 158), (160, 157)),
        ((152, 153), (153, 153)),
    )
    trials = 20_000 if quick else 100_000
    problems = []
    for j, (m, mp) in enumerate(pairs):
        rep = obliviousness_witness(m, mp, 18, 0.5, trials=trials, seed=1100 + j)
        for label, flag in (
            ("boxes", rep.box_ok),
            ("binding", rep.binding_ok),
            ("feasibility", rep.feasible_ok),
        ):
            if not flag:
                problems.append(f"pair {m}/{mp}: {label} check failed")
    detail = f"{len(pairs)} witness pairs; {len(problems)} failed checks"
    if problems:
        detail += "; " + "; ".join(problems)
    return _result(11, "oblivious-witness", not problems, detail)


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run(quick: bool = False, seed: int = 42) -> list:
    """Run every check and return the list of verdict dicts."""
    return [fn(seed=seed, quick=quick) for fn in CRITERIA]
