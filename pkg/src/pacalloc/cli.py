"""Command-line front end with deterministic JSON output.

Every invocation prints one JSON document carrying the command, the
package version, the seed, the echoed parameters, and the results.
Exit codes: 0 on success (including a clean "infeasible" answer), 1 on
validation or usage errors, 2 on capacity errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import CapacityError, SearchInfeasibleError, SolverError, ValidationError
from .exact import approximation_ratio, exact_min_cost
from .game import enumerate_pure_ne, nonexistence_instance, pos_instance, price_of_stability
from .instances import instance_to_dict, load_instance, save_instance
from .lp import solve_linear_program
from .montecarlo import monte_carlo_pac_failure
from .oracles import (
    pac_failure_probability,
    pac_feasible,
    worst_expected_error,
)
from .mechanism import PaymentRule, check_pwyc_uniqueness, obliviousness_witness, strategyproofness_audit
from .planner import (
    build_expected_lp,
    build_pac_lp,
    ceil_counts,
    infinite_class_pipeline,
)
from .reduction import brute_force_set_cover, load_set_cover, min_eliminating_sample_count, set_cover_to_pac
from . import suite as suite_module


def _clean(value):
    """Make results JSON-serializable without losing precision."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _emit(command: str, seed: int, parameters: dict, results: dict) -> None:
    doc = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "parameters": _clean(parameters),
        "results": _clean(results),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))


def _parse_counts(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"could not parse counts {text!r}") from exc


def _load_table_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "costs" not in data or "entries" not in data:
        raise ValidationError("payment table file needs costs and entries fields")
    costs = np.asarray(data["costs"], dtype=float)
    table = {}
    for entry in data["entries"]:
        if "m" not in entry or "payment" not in entry:
            raise ValidationError("each table entry needs m and payment fields")
        table[tuple(int(x) for x in entry["m"])] = np.asarray(
            entry["payment"], dtype=float
        )
    return costs, table


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="pacalloc")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    plan = sub.add_parser("plan", parents=[common])
    plan.add_argument("--instance", required=True)
    plan.add_argument("--objective", choices=("pac", "expected"), default="pac")
    plan.add_argument("--pipeline", action="store_true")
    plan.add_argument("--gamma", type=float, default=None)
    plan.add_argument("--delta-prime", type=float, default=None)
    plan.add_argument("--scale-d", type=float, default=None)

    exact = sub.add_parser("exact", parents=[common])
    exact.add_argument("--instance", required=True)
    exact.add_argument("--objective", choices=("pac", "expected"), default="pac")
    exact.add_argument("--cap", type=int, default=None)

    ratio = sub.add_parser("ratio", parents=[common])
    ratio.add_argument("--instance", required=True)
    ratio.add_argument("--objective", choices=("pac", "expected"), default="pac")

    oracle = sub.add_parser("oracle", parents=[common])
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--counts", required=True)
    oracle.add_argument("--target", type=int, default=None)
    oracle.add_argument("--agent", type=int, default=None)
    oracle.add_argument("--method", choices=("exact", "mc"), default="exact")
    oracle.add_argument("--trials", type=int, default=100_000)

    game = sub.add_parser("game", parents=[common])
    game_sub = game.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    game_ne = game_sub.add_parser("ne", parents=[common])
    game_ne.add_argument("--instance", required=True)
    game_pos = game_sub.add_parser("pos", parents=[common])
    game_pos.add_argument("--epsilon", type=float, required=True)
    game_pos.add_argument("--delta", type=float, required=True)
    game_sub.add_parser("nonexistence", parents=[common])

    mech = sub.add_parser("mech", parents=[common])
    mech_sub = mech.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    audit = mech_sub.add_parser("audit", parents=[common])
    audit.add_argument("--instance", required=True)
    audit.add_argument("--agent", type=int, required=True)
    audit.add_argument("--grid", type=float, default=0.05)
    audit.add_argument("--rule", choices=("pwyc", "table"), default="pwyc")
    audit.add_argument("--table", default=None)
    uniq = mech_sub.add_parser("uniqueness", parents=[common])
    uniq.add_argument("--table", required=True)
    witness = mech_sub.add_parser("witness", parents=[common])
    witness.add_argument("--H", type=int, dest="num_hypotheses", default=18)
    witness.add_argument("--delta", type=float, default=0.5)
    witness.add_argument("--m", required=True)
    witness.add_argument("--mprime", required=True)
    witness.add_argument("--trials", type=int, default=100_000)

    reduce_p = sub.add_parser("reduce", parents=[common])
    reduce_p.add_argument("--setcover", required=True)
    reduce_p.add_argument("--out", default=None)

    suite_p = sub.add_parser("suite", parents=[common])
    suite_p.add_argument("--quick", action="store_true")

    return parser


def _run_plan(args, seed):
    instance = load_instance(args.instance)
    params = {
        "instance": args.instance,
        "objective": args.objective,
        "pipeline": args.pipeline,
    }
    if args.pipeline:
        vector = infinite_class_pipeline(
            instance,
            gamma=args.gamma,
            delta_prime=args.delta_prime,
            scale_d=args.scale_d,
        )
        params.update(
            {"gamma": args.gamma, "delta_prime": args.delta_prime, "scale_d": args.scale_d}
        )
        results = {"contribution_vector": tuple(vector)}
    else:
        lp = build_pac_lp(instance) if args.objective == "pac" else build_expected_lp(instance)
        solution = solve_linear_program(lp)
        if solution.status != "optimal":
            raise SolverError(f"covering LP unexpectedly {solution.status}")
        vector = ceil_counts(solution.x)
        results = {
            "contribution_vector": vector,
            "lp_objective": solution.objective,
            "lp_rows": lp.num_rows,
            "fractional_solution": solution.x,
        }
    _emit("plan", seed, params, results)
    return 0


def _run_exact(args, seed):
    instance = load_instance(args.instance)
    params = {"instance": args.instance, "objective": args.objective, "cap": args.cap}
    try:
        vector = exact_min_cost(instance, args.objective, cap=args.cap)
    except SearchInfeasibleError as exc:
        _emit("exact", seed, params, {"status": "infeasible", "reason": str(exc)})
        return 0
    results = {
        "status": "optimal",
        "contribution_vector": tuple(vector),
        "total_cost": vector.total_cost(instance),
    }
    _emit("exact", seed, params, results)
    return 0


def _run_ratio(args, seed):
    instance = load_instance(args.instance)
    value = approximation_ratio(instance, args.objective)
    _emit(
        "ratio",
        seed,
        {"instance": args.instance, "objective": args.objective},
        {"approximation_ratio": value},
    )
    return 0


def _run_oracle(args, seed):
    instance = load_instance(args.instance)
    counts = _parse_counts(args.counts)
    params = {
        "instance": args.instance,
        "counts": counts,
        "target": args.target,
        "agent": args.agent,
        "method": args.method,
        "trials": args.trials,
    }
    if (args.target is None) != (args.agent is None):
        raise ValidationError("--target and --agent must be given together")
    if args.target is not None:
        if args.method == "exact":
            fp = pac_failure_probability(instance, counts, args.target, args.agent)
            results = {"failure_probability": fp.value}
        else:
            est = monte_carlo_pac_failure(
                instance, counts, args.target, args.agent, args.trials, seed=seed
            )
            results = {
                "failure_probability": est.estimate,
                "standard_error": est.standard_error,
                "trials": est.trials,
            }
        _emit("oracle", seed, params, results)
        return 0
    matrix = [
        [
            pac_failure_probability(instance, counts, t, i).value
            for i in range(instance.num_agents)
        ]
        for t in range(instance.num_hypotheses)
    ]
    results = {
        "failure_matrix": matrix,
        "worst_failure": max(max(row) for row in matrix) if matrix else 0.0,
        "pac_feasible": pac_feasible(instance, counts),
        "worst_expected_error": worst_expected_error(instance, counts),
    }
    _emit("oracle", seed, params, results)
    return 0


def _game_results(outcome) -> dict:
    results = {
        "pure_ne": [tuple(v) for v in outcome.pure_ne],
        "num_pure_ne": len(outcome.pure_ne),
        "best_ne_cost": outcome.best_ne_cost,
        "note": outcome.note,
    }
    if outcome.opt_cost is not None:
        results["opt_cost"] = outcome.opt_cost
    if outcome.pos is not None:
        results["price_of_stability"] = outcome.pos
    return results


def _run_game(args, seed):
    if args.mode == "ne":
        instance = load_instance(args.instance)
        outcome = enumerate_pure_ne(instance)
        _emit("game", seed, {"mode": "ne", "instance": args.instance}, _game_results(outcome))
        return 0
    if args.mode == "pos":
        instance = pos_instance(args.epsilon, args.delta)
        outcome = price_of_stability(instance)
        _emit(
            "game",
            seed,
            {"mode": "pos", "epsilon": args.epsilon, "delta": args.delta},
            _game_results(outcome),
        )
        return 0
    outcome = enumerate_pure_ne(nonexistence_instance())
    _emit("game", seed, {"mode": "nonexistence"}, _game_results(outcome))
    return 0


def _run_mech(args, seed):
    if args.mode == "audit":
        instance = load_instance(args.instance)
        if args.rule == "table":
            if args.table is None:
                raise ValidationError("--rule table needs --table <file>")
            _, table = _load_table_file(args.table)
            rule = PaymentRule("table", table=table)
        else:
            rule = PaymentRule("pwyc")
        report = strategyproofness_audit(instance, args.grid, args.agent, rule)
        results = {
            "agent_index": report.agent_index,
            "truthful_utility": report.truthful_utility,
            "best_misreport_utility": report.best_misreport_utility,
            "misreport": report.misreport,
            "strategyproof": report.strategyproof,
            "num_misreports": report.num_misreports,
        }
        _emit(
            "mech",
            seed,
            {
                "mode": "audit",
                "instance": args.instance,
                "agent": args.agent,
                "grid": args.grid,
                "rule": args.rule,
            },
            results,
        )
        return 0
    if args.mode == "uniqueness":
        costs, table = _load_table_file(args.table)
        report = check_pwyc_uniqueness(table, costs)
        results = {
            "uniform": report.uniform,
            "constants": report.constants,
            "witness": report.witness,
        }
        _emit("mech", seed, {"mode": "uniqueness", "table": args.table}, results)
        return 0
    m = _parse_counts(args.m)
    m_prime = _parse_counts(args.mprime)
    report = obliviousness_witness(
        m, m_prime, args.num_hypotheses, args.delta, trials=args.trials, seed=seed
    )
    results = {
        "d1": report.d1,
        "d2": report.d2,
        "d1_prime": report.d1_prime,
        "d2_prime": report.d2_prime,
        "box_ok": report.box_ok,
        "binding_ok": report.binding_ok,
        "feasible_ok": report.feasible_ok,
        "ok": report.ok,
        "details": report.details,
    }
    _emit(
        "mech",
        seed,
        {
            "mode": "witness",
            "H": args.num_hypotheses,
            "delta": args.delta,
            "m": m,
            "mprime": m_prime,
            "trials": args.trials,
        },
        results,
    )
    return 0


def _run_reduce(args, seed):
    cover = load_set_cover(args.setcover)
    instance = set_cover_to_pac(cover)
    minimum = brute_force_set_cover(cover)
    eliminating = min_eliminating_sample_count(instance, cover.num_subsets)
    results = {
        "universe_size": cover.universe_size,
        "num_subsets": cover.num_subsets,
        "min_cover_size": minimum,
        "min_eliminating_sample_count": eliminating,
        "agreement": minimum == eliminating,
        "instance": instance_to_dict(instance),
    }
    params = {"setcover": args.setcover, "out": args.out}
    if args.out:
        save_instance(instance, args.out)
        results["instance_file"] = args.out
    _emit("reduce", seed, params, results)
    return 0


def _run_suite(args, seed):
    rows = suite_module.run(quick=args.quick, seed=seed)
    overall = all(row["passed"] for row in rows)
    for row in rows:
        verdict = "pass" if row["passed"] else "FAIL"
        print(f"criterion {row['criterion']:2d} [{verdict}] {row['name']}", file=sys.stderr)
    _emit(
        "suite",
        seed,
        {"quick": args.quick},
        {"criteria": rows, "overall": overall},
    )
    return 0


_RUNNERS = {
    "plan": _run_plan,
    "exact": _run_exact,
    "ratio": _run_ratio,
    "oracle": _run_oracle,
    "game": _run_game,
    "mech": _run_mech,
    "reduce": _run_reduce,
    "suite": _run_suite,
}


def dispatch(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "seed", 42)
    try:
        return _RUNNERS[args.command](args, seed)
    except ValidationError as exc:
        print(json.dumps({"error": str(exc), "kind": "validation"}, sort_keys=True))
        return 1
    except CapacityError as exc:
        print(json.dumps({"error": str(exc), "kind": "capacity"}, sort_keys=True))
        return 2
    except SolverError as exc:
        print(json.dumps({"error": str(exc), "kind": "solver"}, sort_keys=True))
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": str(exc), "kind": "validation"}, sort_keys=True))
        return 1


def main() -> None:
    raise SystemExit(dispatch())


if __name__ == "__main__":
    main()
