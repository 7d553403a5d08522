"""Exact shortest-lasso baseline and an independent feasibility oracle.

The baseline scans every midpoint inside every cost-optimal component and
finds, per midpoint, the shortest covering cycle by BFS over (state,
met-target-mask) pairs, which enumerates cycles in nondecreasing length.
Exponential only in the number of target sets, so it is practical for few
soft constraints and serves as the ground truth the greedy planner is
compared against.

`feasible_subset` answers "can the hard formula plus a chosen subset of soft
constraints be satisfied at all" by translating the conjunction directly and
checking emptiness of an unweighted automaton-TS product; it shares nothing
with the weighted-product planner beyond the LTL translator.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .automata import degeneralize, ltl_to_gba
from .ltl import And, LtlFormula, to_nnf
from .product import ProductAutomaton
from .synthesis import (
    Lasso,
    SccInfo,
    _bfs_tree_from_init,
    _path_from_tree,
    covering_targets,
    strongly_connected_components,
)
from .transition_system import TransitionSystem


@dataclass(frozen=True)
class BruteForceResult:
    lasso: Lasso | None
    optimal_length: bool
    timed_out: bool


def shortest_covering_cycle(
    p: ProductAutomaton, scc: SccInfo, midpoint: int, targets, max_len: int | None = None
) -> list | None:
    """Minimum-edge-count cycle from `midpoint` through every target set.

    BFS over coverage states (component state, mask of met target sets);
    masks only grow along a walk, so the first return to the midpoint with a
    full mask closes a shortest covering cycle.  Returns the cycle states
    (wrap edge implied) or None if `max_len` cuts the search off first.
    """
    member_set = frozenset(scc.members)
    if midpoint not in member_set:
        raise ValueError("midpoint must belong to the component")
    n_targets = len(targets)
    full = (1 << n_targets) - 1
    bits_of = {}
    for m in member_set:
        bits = 0
        for j, t in enumerate(targets):
            if m in t:
                bits |= 1 << j
        bits_of[m] = bits

    n_masks = full + 1
    start_mask = bits_of[midpoint]
    start_node = midpoint * n_masks + start_mask
    prev = {start_node: -1}
    dist = {start_node: 0}
    queue = deque([start_node])
    while queue:
        node = queue.popleft()
        state, mask = divmod(node, n_masks)
        depth = dist[node]
        if max_len is not None and depth >= max_len:
            return None
        for w in p.adjacency[state]:
            if w not in member_set:
                continue
            new_mask = mask | bits_of[w]
            if w == midpoint and new_mask == full:
                cycle = [midpoint]
                back = node
                while back != -1:
                    cycle.append(back // n_masks)
                    back = prev[back]
                cycle.reverse()
                return cycle[:-1]
            child = w * n_masks + new_mask
            if child not in prev:
                prev[child] = node
                dist[child] = depth + 1
                queue.append(child)
    return None


def brute_force_shortest_lasso(
    p: ProductAutomaton, budget_seconds: float | None = None
) -> BruteForceResult:
    """Shortest accepting lasso among those of minimum weight cost.

    Scans all cost-tied optimal components and every midpoint within them,
    pairing the BFS-shortest prefix with the shortest covering cycle at that
    midpoint; ties break toward the smallest midpoint index.  An expired
    budget returns the best lasso found so far flagged as non-optimal.
    """
    sccs = strongly_connected_components(p)
    candidates = [s for s in sccs if s.accepting]
    if not candidates:
        return BruteForceResult(None, True, False)
    min_cost = min(s.cost.value for s in candidates)
    tied = [s for s in candidates if s.cost.value == min_cost]
    dist0, parent0 = _bfs_tree_from_init(p)

    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    best = None  # (total_len, midpoint, prefix_path, cycle, scc)
    timed_out = False
    for scc in tied:
        targets = covering_targets(p, scc)
        for midpoint in scc.members:
            if deadline is not None and time.monotonic() > deadline:
                timed_out = True
                break
            d = dist0[midpoint]
            limit = None
            if best is not None:
                # keep equal totals so ties still resolve to the smallest
                # midpoint index
                limit = best[0] - d
                if limit < 1:
                    continue
            cycle = shortest_covering_cycle(p, scc, midpoint, targets, max_len=limit)
            if cycle is None:
                continue
            total = d + len(cycle)
            key = (total, midpoint)
            if best is None or key < (best[0], best[1]):
                best = (total, midpoint, _path_from_tree(parent0, midpoint), cycle, scc)
        if timed_out:
            break

    if best is None:
        return BruteForceResult(None, not timed_out, timed_out)
    _, _, prefix_path, cycle, scc = best
    lasso = Lasso(
        prefix=tuple(prefix_path[:-1]),
        cycle=tuple(cycle),
        inf=scc.weight_vector,
        cost=scc.cost,
        product=p,
    )
    return BruteForceResult(lasso, not timed_out, timed_out)


def _emptiness_nonempty(automaton, ts: TransitionSystem) -> bool:
    """Nonemptiness of the plain automaton-TS product via Kosaraju SCCs."""
    index = {}
    order = []
    adjacency = []

    def intern(q, s):
        key = (q, s)
        idx = index.get(key)
        if idx is None:
            idx = len(order)
            index[key] = idx
            order.append(key)
            adjacency.append(None)
        return idx

    intern(automaton.init, ts.init)
    cursor = 0
    while cursor < len(order):
        q, s = order[cursor]
        src = cursor
        cursor += 1
        targets = []
        for q2 in automaton.successors(q, ts.labels[s]):
            for s2 in ts.adjacency[s]:
                targets.append(intern(q2, s2))
        adjacency[src] = sorted(set(targets))

    n = len(order)
    visit_order = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, 0)]
        while stack:
            v, idx = stack.pop()
            if idx < len(adjacency[v]):
                stack.append((v, idx + 1))
                w = adjacency[v][idx]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                visit_order.append(v)
    reverse = [[] for _ in range(n)]
    for v in range(n):
        for w in adjacency[v]:
            reverse[w].append(v)
    assigned = [False] * n
    for v in reversed(visit_order):
        if assigned[v]:
            continue
        comp = []
        stack = [v]
        assigned[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in reverse[u]:
                if not assigned[w]:
                    assigned[w] = True
                    stack.append(w)
        has_loop = len(comp) > 1 or comp[0] in adjacency[comp[0]]
        if has_loop and any(order[u][0] in automaton.accepting for u in comp):
            return True
    return False


def feasible_subset(ts: TransitionSystem, hard: LtlFormula, softs, subset) -> bool:
    """Whether some TS path satisfies the hard formula and every chosen soft.

    `subset` holds 1-based soft indices.  The conjunction is translated to a
    single automaton and checked for nonemptiness against the TS, entirely
    outside the weighted-product pipeline.
    """
    softs = list(softs)
    chosen = sorted(set(subset))
    if any(i < 1 or i > len(softs) for i in chosen):
        raise ValueError(f"subset {chosen} out of range 1..{len(softs)}")
    formula = hard
    for i in chosen:
        formula = And(formula, softs[i - 1])
    automaton = degeneralize(ltl_to_gba(to_nnf(formula), ts.ap))
    return _emptiness_nonempty(automaton, ts)
