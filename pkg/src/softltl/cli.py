"""Command-line front end.

Subcommands: plan (solve a problem file), check (semantic verification of a
claimed result), translate (formula to automaton dump), reorder (re-plan a
cached product under new priorities), bench (random-graph comparison).

Exit codes: 0 success, 1 failed verification, 2 infeasible hard mission,
64 usage error, 65 malformed content, 66 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .automata import automaton_to_dot, automaton_to_json, degeneralize, ltl_to_gba
from .experiment import format_rows_table, ratios_to_histogram_tsv, rows_to_csv, run_experiment
from .ltl import parse_ltl, to_nnf
from .planner import load_problem, result_to_json, solve, verify_result
from .product import product_from_json, product_to_json
from .synthesis import project_to_ts, resynthesize_with_priorities
from .transition_system import trace_of

EX_OK = 0
EX_VERIFY_FAILED = 1
EX_INFEASIBLE = 2
EX_USAGE = 64
EX_DATA = 65
EX_IO = 66


class _UsageExit(Exception):
    def __init__(self, code: int):
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise _UsageExit(EX_USAGE)

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _UsageExit(status)


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise _CliError(EX_IO, f"cannot read '{path}': {err.strerror or err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise _CliError(EX_DATA, f"'{path}' is not valid JSON: {err}") from err


def _write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as err:
        raise _CliError(EX_IO, f"cannot write '{path}': {err.strerror or err}") from err


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_duration(text: str) -> float:
    units = {"s": 1.0, "m": 60.0, "h": 3600.0}
    try:
        if text and text[-1] in units:
            return float(text[:-1]) * units[text[-1]]
        return float(text)
    except ValueError:
        raise _CliError(EX_USAGE, f"cannot parse duration '{text}' (use e.g. 90s, 20m, 1h)")


def _emit(document, out_path):
    text = json.dumps(document, indent=2) + "\n"
    if out_path:
        _write_text(out_path, text)
    else:
        sys.stdout.write(text)


def _cmd_plan(args) -> int:
    problem = load_problem(_read_json(args.problem))
    budget = _parse_duration(args.budget) if args.budget else None
    result = solve(
        problem,
        midpoint_variant=args.midpoint_variant,
        exact=args.exact,
        budget_seconds=budget,
    )
    if args.dump_product:
        _emit(product_to_json(result.product), args.dump_product)
    _emit(result_to_json(result, problem.ts), args.out)
    return EX_OK if result.feasible else EX_INFEASIBLE


def _cmd_check(args) -> int:
    problem = load_problem(_read_json(args.problem))
    result_doc = _read_json(args.result)
    diagnostics = verify_result(problem, result_doc)
    if diagnostics:
        for line in diagnostics:
            sys.stderr.write(f"check failed: {line}\n")
        return EX_VERIFY_FAILED
    sys.stdout.write("verified\n")
    return EX_OK


def _cmd_translate(args) -> int:
    ap = [a for a in args.ap.split(",") if a]
    formula = parse_ltl(args.formula, frozenset(ap))
    automaton = degeneralize(ltl_to_gba(to_nnf(formula), frozenset(ap)))
    if args.dot:
        text = automaton_to_dot(automaton) + "\n"
        if args.out:
            _write_text(args.out, text)
        else:
            sys.stdout.write(text)
    else:
        _emit(automaton_to_json(automaton), args.out)
    return EX_OK


def _cmd_reorder(args) -> int:
    problem = load_problem(_read_json(args.problem))
    product = product_from_json(_read_json(args.cache), problem.ts)
    if product.n_soft != len(problem.softs):
        raise _CliError(
            EX_DATA,
            f"cached product has {product.n_soft} soft bits, problem has {len(problem.softs)}",
        )
    try:
        order = [int(part) for part in args.permutation.split(",")]
    except ValueError:
        raise _CliError(EX_USAGE, f"permutation '{args.permutation}' must be comma-separated integers")
    t0 = time.perf_counter()
    lasso = resynthesize_with_priorities(product, order)
    synth_ms = (time.perf_counter() - t0) * 1000.0
    if lasso is None:
        _emit(
            {
                "format": 1,
                "feasible": False,
                "prefix": [],
                "cycle": [],
                "satisfied": [],
                "cost": None,
                "product_states": product.n_states,
                "lasso_len": 0,
                "timings_ms": {"synthesize": round(synth_ms, 3)},
            },
            args.out,
        )
        return EX_INFEASIBLE
    path = project_to_ts(lasso)
    trace_of(problem.ts, path)  # validates adjacency before reporting
    _emit(
        {
            "format": 1,
            "feasible": True,
            "prefix": [problem.ts.state_ids[s] for s in path.prefix],
            "cycle": [problem.ts.state_ids[s] for s in path.cycle],
            "satisfied": list(lasso.satisfied),
            "cost": str(lasso.cost.value),
            "product_states": product.n_states,
            "lasso_len": lasso.length,
            "timings_ms": {"synthesize": round(synth_ms, 3)},
        },
        args.out,
    )
    return EX_OK


def _cmd_bench(args) -> int:
    try:
        sizes = [int(part) for part in args.sizes.split(",") if part]
    except ValueError:
        raise _CliError(EX_USAGE, f"sizes '{args.sizes}' must be comma-separated integers")
    budget = _parse_duration(args.budget)
    rows, outcomes = run_experiment(
        sizes,
        trials=args.trials,
        budget_seconds=budget,
        seed=args.seed,
        n_soft=args.soft_bits,
        bit_prob=args.bit_prob,
        midpoint_variant=args.midpoint_variant,
    )
    if args.csv:
        _write_text(args.csv, rows_to_csv(rows))
    if args.hist:
        _write_text(args.hist, ratios_to_histogram_tsv(outcomes))
    sys.stdout.write(format_rows_table(rows) + "\n")
    return EX_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="softltl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    plan = sub.add_parser("plan", help="solve a planning problem file")
    plan.add_argument("problem")
    plan.add_argument("--midpoint-variant", action="store_true")
    plan.add_argument("--exact", action="store_true", help="run the brute-force baseline")
    plan.add_argument("--budget", default=None, help="baseline time budget (e.g. 20m)")
    plan.add_argument("--dump-product", metavar="FILE", default=None)
    plan.add_argument("--out", metavar="FILE", default=None)
    plan.set_defaults(func=_cmd_plan)

    check = sub.add_parser("check", help="verify a claimed result semantically")
    check.add_argument("problem")
    check.add_argument("result")
    check.set_defaults(func=_cmd_check)

    translate = sub.add_parser("translate", help="translate a formula to an automaton dump")
    translate.add_argument("formula")
    translate.add_argument("--ap", required=True, help="comma-separated atomic propositions")
    translate.add_argument("--dot", action="store_true")
    translate.add_argument("--out", metavar="FILE", default=None)
    translate.set_defaults(func=_cmd_translate)

    reorder = sub.add_parser("reorder", help="re-plan a cached product under new priorities")
    reorder.add_argument("problem")
    reorder.add_argument("permutation", help="new priority order, e.g. 1,2,3,4,6,5")
    reorder.add_argument("--cache", required=True, metavar="PRODUCT_FILE")
    reorder.add_argument("--out", metavar="FILE", default=None)
    reorder.set_defaults(func=_cmd_reorder)

    bench = sub.add_parser("bench", help="random-graph comparison experiment")
    bench.add_argument("--sizes", required=True)
    bench.add_argument("--trials", type=int, required=True)
    bench.add_argument("--budget", default="20m")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--soft-bits", type=int, default=10)
    bench.add_argument("--bit-prob", type=float, default=0.2)
    bench.add_argument("--midpoint-variant", action="store_true")
    bench.add_argument("--csv", metavar="FILE", default=None)
    bench.add_argument("--hist", metavar="FILE", default=None)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as err:
        return err.code
    try:
        return args.func(args)
    except _CliError as err:
        sys.stderr.write(f"softltl {args.command}: {err}\n")
        return err.code
    except ValueError as err:
        sys.stderr.write(f"softltl {args.command}: {err}\n")
        return EX_DATA


if __name__ == "__main__":
    sys.exit(main())
