"""End-to-end planning: formulas in, verified trajectory out.

Pipeline: translate the mission and each soft constraint to Buchi automata
(soft ones completed to be nonblocking), build the state-weighted product,
synthesize a minimum-cost accepting lasso, and project it back onto the
transition system.  `verify_result` re-checks a claimed trajectory purely
semantically - path validity, mission satisfaction, and the exact satisfied
set - without trusting any of the planner's intermediate artifacts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .automata import BuchiAutomaton, degeneralize, ltl_to_gba, make_nonblocking, prune_unproductive
from .baseline import BruteForceResult, brute_force_shortest_lasso
from .ltl import LassoWord, LtlFormula, eval_lasso, parse_ltl, satisfied_set, to_nnf
from .product import Cost, ProductAutomaton, build_product, cost_of_vector
from .synthesis import Lasso, minimum_cost_accepting_lasso, project_to_ts
from .transition_system import InvalidPath, TransitionSystem, TsPath, load_ts, trace_of


@dataclass(eq=False)
class Problem:
    ts: TransitionSystem
    hard: LtlFormula
    softs: tuple
    hard_text: str
    soft_texts: tuple


def load_problem(document) -> Problem:
    """Parse and validate a problem document {ts, hard, soft}."""
    if not isinstance(document, dict):
        raise ValueError("problem document must be a JSON object")
    for key in ("ts", "hard", "soft"):
        if key not in document:
            raise ValueError(f"missing required key '{key}'")
    ts = load_ts(document["ts"])
    hard_text = document["hard"]
    soft_texts = document["soft"]
    if not isinstance(soft_texts, list):
        raise ValueError("'soft' must be a list of formulas in priority order")
    hard = parse_ltl(hard_text, ts.ap)
    softs = tuple(parse_ltl(text, ts.ap) for text in soft_texts)
    return Problem(ts, hard, softs, hard_text, tuple(soft_texts))


def translate_hard(f: LtlFormula, ap) -> BuchiAutomaton:
    return prune_unproductive(degeneralize(ltl_to_gba(to_nnf(f), ap)))


def translate_soft(f: LtlFormula, ap) -> BuchiAutomaton:
    return make_nonblocking(prune_unproductive(degeneralize(ltl_to_gba(to_nnf(f), ap))))


@dataclass(eq=False)
class PlanResult:
    feasible: bool
    lasso: Lasso | None
    path: TsPath | None
    trace: LassoWord | None
    satisfied: tuple
    cost: Cost | None
    product: ProductAutomaton
    timings_ms: dict
    exact: BruteForceResult | None = None

    @property
    def lasso_len(self) -> int:
        return 0 if self.lasso is None else self.lasso.length


def build_planning_product(problem: Problem) -> tuple:
    """Translate all formulas and build the product; returns it with timings."""
    t0 = time.perf_counter()
    hard = translate_hard(problem.hard, problem.ts.ap)
    softs = [translate_soft(f, problem.ts.ap) for f in problem.softs]
    t1 = time.perf_counter()
    product = build_product(hard, problem.ts, softs)
    t2 = time.perf_counter()
    timings = {
        "translate": (t1 - t0) * 1000.0,
        "product": (t2 - t1) * 1000.0,
    }
    return product, timings


def solve(
    problem: Problem,
    midpoint_variant: bool = False,
    exact: bool = False,
    budget_seconds: float | None = None,
    product: ProductAutomaton | None = None,
) -> PlanResult:
    """Solve the planning problem; pass a cached `product` to skip rebuilding."""
    if product is None:
        product, timings = build_planning_product(problem)
    else:
        timings = {"translate": 0.0, "product": 0.0}
    t2 = time.perf_counter()
    exact_info = None
    if exact:
        exact_info = brute_force_shortest_lasso(product, budget_seconds)
        lasso = exact_info.lasso
    else:
        lasso = minimum_cost_accepting_lasso(product, midpoint_variant)
    t3 = time.perf_counter()
    timings["synthesize"] = (t3 - t2) * 1000.0
    timings["total"] = timings["translate"] + timings["product"] + timings["synthesize"]

    if lasso is None:
        return PlanResult(False, None, None, None, (), None, product, timings, exact_info)
    path = project_to_ts(lasso)
    trace = trace_of(problem.ts, path)
    return PlanResult(
        True,
        lasso,
        path,
        trace,
        lasso.satisfied,
        lasso.cost,
        product,
        timings,
        exact_info,
    )


def result_to_json(result: PlanResult, ts: TransitionSystem) -> dict:
    doc = {
        "format": 1,
        "feasible": result.feasible,
        "prefix": [ts.state_ids[s] for s in (result.path.prefix if result.path else ())],
        "cycle": [ts.state_ids[s] for s in (result.path.cycle if result.path else ())],
        "satisfied": list(result.satisfied),
        "cost": str(result.cost.value) if result.cost is not None else None,
        "product_states": result.product.n_states,
        "lasso_len": result.lasso_len,
        "timings_ms": {k: round(v, 3) for k, v in result.timings_ms.items()},
    }
    if result.exact is not None:
        doc["optimal_length"] = result.exact.optimal_length
        doc["timed_out"] = result.exact.timed_out
    return doc


def verify_result(problem: Problem, result_doc: dict) -> list:
    """Semantic re-check of a claimed result; returns diagnostics (empty = ok).

    Confirms the path exists in the transition system (adjacency including
    junction and wrap), starts at the initial state, satisfies the hard
    formula, and that the claimed satisfied set and cost match the trace
    exactly per the direct LTL semantics.
    """
    diagnostics = []
    ts = problem.ts
    if not isinstance(result_doc, dict):
        return ["result document must be a JSON object"]
    if not result_doc.get("feasible", True):
        return ["result claims infeasibility; nothing to verify"]
    prefix_ids = result_doc.get("prefix", [])
    cycle_ids = result_doc.get("cycle", [])
    if not cycle_ids:
        return ["result cycle is empty"]
    for sid in list(prefix_ids) + list(cycle_ids):
        if sid not in ts.index_of:
            return [f"unknown transition-system state '{sid}'"]
    path = TsPath(
        tuple(ts.index_of[s] for s in prefix_ids),
        tuple(ts.index_of[s] for s in cycle_ids),
    )
    first = path.prefix[0] if path.prefix else path.cycle[0]
    if first != ts.init:
        diagnostics.append(
            f"path starts at '{ts.state_ids[first]}', not the initial state "
            f"'{ts.state_ids[ts.init]}'"
        )
    try:
        trace = trace_of(ts, path)
    except InvalidPath as err:
        diagnostics.append(str(err))
        return diagnostics
    if not eval_lasso(problem.hard, trace):
        diagnostics.append("trace violates the hard mission formula")
    vector = satisfied_set(trace, problem.softs)
    actual = [i + 1 for i, bit in enumerate(vector) if bit]
    claimed = list(result_doc.get("satisfied", []))
    if actual != claimed:
        diagnostics.append(f"claimed satisfied set {claimed} but trace satisfies {actual}")
    claimed_cost = result_doc.get("cost")
    if claimed_cost is not None:
        true_cost = cost_of_vector(vector)
        if str(true_cost.value) != str(claimed_cost):
            diagnostics.append(
                f"claimed cost {claimed_cost} but trace cost is {true_cost.value}"
            )
    return diagnostics
