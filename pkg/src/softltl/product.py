"""State-weighted product of mission automaton, transition system, and soft automata.

Product states are tuples (hard state, TS state, soft states...) interned to
dense indices; only the fragment reachable from the initial tuple is
materialized.  Each state carries a Boolean weight vector recording which
soft automata sit in an accepting state, and the cost of a vector sums
n^(n-i) over violated constraints, which orders vectors lexicographically
by priority.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import total_ordering

from .automata import BuchiAutomaton
from .ltl import LassoWord, satisfied_set
from .transition_system import TransitionSystem


class ApMismatchError(ValueError):
    pass


def mask_to_vector(mask: int, n: int) -> tuple:
    return tuple(bool(mask >> i & 1) for i in range(n))


def vector_to_mask(vector) -> int:
    mask = 0
    for i, bit in enumerate(vector):
        if bit:
            mask |= 1 << i
    return mask


@total_ordering
@dataclass(frozen=True)
class Cost:
    """Exact cost value paired with the satisfaction vector that produced it.

    Python integers are unbounded, so n^(n-i) never overflows; comparing
    values is identical to comparing vectors lexicographically with satisfied
    beating violated at each priority.
    """

    value: int
    vector: tuple

    def __lt__(self, other: "Cost") -> bool:
        return self.value < other.value

    def satisfied_indices(self) -> tuple:
        return tuple(i + 1 for i, bit in enumerate(self.vector) if bit)


def cost_of_vector(vector) -> Cost:
    """Cost of a satisfaction vector: sum of n^(n-i) over violated i (1-based)."""
    vector = tuple(bool(b) for b in vector)
    n = len(vector)
    value = sum(n ** (n - 1 - j) for j, bit in enumerate(vector) if not bit)
    return Cost(value, vector)


def cost_of_mask(mask: int, n: int) -> Cost:
    return cost_of_vector(mask_to_vector(mask, n))


def trace_cost(w: LassoWord, softs) -> Cost:
    """Semantic cost of a trace: evaluates every soft formula on the word."""
    return cost_of_vector(satisfied_set(w, softs))


@dataclass(eq=False)
class ProductAutomaton:
    n_soft: int
    n_states: int
    init: int
    adjacency: tuple  # per-state sorted tuple of successor indices
    accepting: tuple  # per-state bool
    weights: tuple  # per-state bitmask, bit i <=> soft i+1 accepting here
    ts: TransitionSystem | None = None
    ts_component: tuple | None = None  # TS state index per product state
    state_tuples: tuple | None = None  # full component tuples, for audits
    hard: BuchiAutomaton | None = None
    softs: tuple | None = None
    # caches filled lazily by the synthesis layer: the structural
    # decomposition and BFS tree are weight-independent; the assembled
    # component summaries belong to this specific weight assignment
    scc_cache: object = field(default=None, repr=False)
    bfs_tree_cache: object = field(default=None, repr=False)
    scc_info_cache: object = field(default=None, repr=False)

    @property
    def n_edges(self) -> int:
        return sum(len(row) for row in self.adjacency)

    def weight_vector(self, state: int) -> tuple:
        return mask_to_vector(self.weights[state], self.n_soft)

    def with_weights(self, weights) -> "ProductAutomaton":
        """Same graph with replaced weight masks.

        The component decomposition and BFS tree are weight-independent, so
        the caches carry over; that is what makes re-prioritization cheap.
        """
        clone = ProductAutomaton(
            n_soft=self.n_soft,
            n_states=self.n_states,
            init=self.init,
            adjacency=self.adjacency,
            accepting=self.accepting,
            weights=tuple(weights),
            ts=self.ts,
            ts_component=self.ts_component,
            state_tuples=self.state_tuples,
            hard=self.hard,
            softs=self.softs,
        )
        clone.scc_cache = self.scc_cache
        clone.bfs_tree_cache = self.bfs_tree_cache
        clone.scc_info_cache = None
        return clone


def _label_tables(automaton: BuchiAutomaton, labels):
    """successor lookup per TS label: table[label][state] -> targets tuple."""
    return {
        a: [automaton.delta.get(q, {}).get(a, ()) for q in range(automaton.n_states)]
        for a in labels
    }


def build_product(hard: BuchiAutomaton, ts: TransitionSystem, softs) -> ProductAutomaton:
    """Forward-explore the reachable product per the synchronous transition rule.

    A product edge exists when the TS moves along its relation and every
    automaton component can read the source TS state's label.  Soft automata
    must be nonblocking so they never prune edges.
    """
    softs = tuple(softs)
    if hard.ap != ts.ap:
        raise ApMismatchError("mission automaton AP differs from transition system AP")
    for i, b in enumerate(softs):
        if b.ap != ts.ap:
            raise ApMismatchError(f"soft automaton {i + 1} AP differs from transition system AP")
        if not b.is_total():
            raise ValueError(f"soft automaton {i + 1} is not nonblocking; complete it first")

    ts_labels = set(ts.labels)
    hard_table = _label_tables(hard, ts_labels)
    soft_tables = [_label_tables(b, ts_labels) for b in softs]

    index: dict = {}
    order: list = []
    adjacency: list = []

    def intern(tup) -> int:
        idx = index.get(tup)
        if idx is None:
            idx = len(order)
            index[tup] = idx
            order.append(tup)
            adjacency.append(None)
        return idx

    initial = (hard.init, ts.init) + tuple(b.init for b in softs)
    intern(initial)
    cursor = 0
    while cursor < len(order):
        tup = order[cursor]
        src = cursor
        cursor += 1
        q, s = tup[0], tup[1]
        label = ts.labels[s]
        hard_succ = hard_table[label][q]
        if not hard_succ:
            adjacency[src] = ()
            continue
        soft_succ = [soft_tables[i][label][tup[2 + i]] for i in range(len(softs))]
        targets = [
            intern(combo)
            for combo in itertools.product(hard_succ, ts.adjacency[s], *soft_succ)
        ]
        adjacency[src] = tuple(sorted(set(targets)))

    accepting = tuple(tup[0] in hard.accepting for tup in order)
    weights = []
    for tup in order:
        mask = 0
        for i, b in enumerate(softs):
            if tup[2 + i] in b.accepting:
                mask |= 1 << i
        weights.append(mask)

    return ProductAutomaton(
        n_soft=len(softs),
        n_states=len(order),
        init=0,
        adjacency=tuple(adjacency),
        accepting=accepting,
        weights=tuple(weights),
        ts=ts,
        ts_component=tuple(tup[1] for tup in order),
        state_tuples=tuple(order),
        hard=hard,
        softs=softs,
    )


def product_to_json(p: ProductAutomaton) -> dict:
    """Debug/cache dump; enough to re-synthesize and project without rebuilding."""
    if p.ts is None or p.ts_component is None:
        raise ValueError("product has no transition-system backing to dump")
    bits = []
    for state in range(p.n_states):
        vec = mask_to_vector(p.weights[state], p.n_soft)
        bits.append("".join("T" if b else "F" for b in vec))
    return {
        "format": 1,
        "n_soft": p.n_soft,
        "init": p.init,
        "states": [
            {
                "id": state,
                "ts": p.ts.state_ids[p.ts_component[state]],
                "w": bits[state],
                "accepting": bool(p.accepting[state]),
            }
            for state in range(p.n_states)
        ],
        "edges": [
            [src, dst] for src in range(p.n_states) for dst in p.adjacency[src]
        ],
    }


def product_from_json(document: dict, ts: TransitionSystem) -> ProductAutomaton:
    """Rebuild a cached product dump for re-synthesis against the same TS."""
    if not isinstance(document, dict) or "states" not in document or "edges" not in document:
        raise ValueError("malformed product dump")
    n_soft = int(document["n_soft"])
    states = document["states"]
    n = len(states)
    weights = [0] * n
    accepting = [False] * n
    ts_component = [0] * n
    for entry in states:
        idx = int(entry["id"])
        bits = entry["w"]
        if len(bits) != n_soft or any(c not in "TF" for c in bits):
            raise ValueError(f"malformed weight bitstring {bits!r}")
        weights[idx] = vector_to_mask(c == "T" for c in bits)
        accepting[idx] = bool(entry["accepting"])
        sid = entry["ts"]
        if sid not in ts.index_of:
            raise ValueError(f"product state {idx} references unknown TS state '{sid}'")
        ts_component[idx] = ts.index_of[sid]
    rows = [[] for _ in range(n)]
    for src, dst in document["edges"]:
        rows[src].append(dst)
    return ProductAutomaton(
        n_soft=n_soft,
        n_states=n,
        init=int(document.get("init", 0)),
        adjacency=tuple(tuple(sorted(set(r))) for r in rows),
        accepting=tuple(accepting),
        weights=tuple(weights),
        ts=ts,
        ts_component=tuple(ts_component),
    )
