"""Buchi and generalized Buchi automata over label-set alphabets.

Transitions carry explicit label subsets of AP (the alphabet 2^AP is
materialized per transition), which keeps everything concrete for
small proposition sets.  The LTL translation is a tableau construction
over negation-normal-form closure sets with one acceptance set per
Until subformula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ltl import (
    And,
    Atom,
    FalseF,
    LassoWord,
    LtlFormula,
    Next,
    Not,
    Or,
    Release,
    TrueF,
    Until,
    formula_atoms,
    is_nnf,
)

_MAX_EXPLICIT_AP = 16


def label_universe(ap) -> list[frozenset]:
    """All label sets over `ap`, in a fixed deterministic order."""
    atoms = sorted(ap)
    if len(atoms) > _MAX_EXPLICIT_AP:
        raise ValueError(f"alphabet 2^{len(atoms)} too large to materialize")
    out = []
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            out.append(frozenset(combo))
    return out


@dataclass(eq=False)
class BuchiAutomaton:
    ap: frozenset
    n_states: int
    init: int
    # src -> label -> sorted target tuple
    delta: dict
    accepting: frozenset

    def successors(self, state: int, label: frozenset) -> tuple:
        return self.delta.get(state, {}).get(label, ())

    def transitions(self):
        for src in sorted(self.delta):
            for label in sorted(self.delta[src], key=sorted):
                for dst in self.delta[src][label]:
                    yield src, label, dst

    def is_total(self) -> bool:
        labels = label_universe(self.ap)
        for q in range(self.n_states):
            row = self.delta.get(q, {})
            for a in labels:
                if not row.get(a):
                    return False
        return True


@dataclass(eq=False)
class GeneralizedBuchiAutomaton:
    ap: frozenset
    n_states: int
    init: int
    delta: dict
    accepting_family: tuple  # of frozensets of states

    def successors(self, state: int, label: frozenset) -> tuple:
        return self.delta.get(state, {}).get(label, ())

    def transitions(self):
        for src in sorted(self.delta):
            for label in sorted(self.delta[src], key=sorted):
                for dst in self.delta[src][label]:
                    yield src, label, dst


def _collect_untils(f: LtlFormula, acc: set):
    if isinstance(f, Until):
        acc.add(f)
    if isinstance(f, (Not, Next)):
        _collect_untils(f.sub, acc)
    elif isinstance(f, (And, Or, Until, Release)):
        _collect_untils(f.left, acc)
        _collect_untils(f.right, acc)


def _expand_obligations(new_formulas: frozenset):
    """Tableau-expand a set of present obligations.

    Yields fully processed branches as (old, next) frozenset pairs, where
    `old` holds literals plus the composite formulas processed at this
    position and `next` holds obligations deferred to the successor.
    Contradictory branches are dropped.
    """
    results = []
    seen = set()
    work = [(new_formulas, frozenset(), frozenset())]
    while work:
        new_s, old_s, next_s = work.pop()
        if not new_s:
            key = (old_s, next_s)
            if key not in seen:
                seen.add(key)
                results.append(key)
            continue
        eta = min(new_s, key=repr)
        rest = new_s - {eta}
        if isinstance(eta, FalseF):
            continue
        if isinstance(eta, TrueF):
            work.append((rest, old_s, next_s))
        elif isinstance(eta, Atom) or isinstance(eta, Not):
            negation = eta.sub if isinstance(eta, Not) else Not(eta)
            if negation in old_s:
                continue
            work.append((rest, old_s | {eta}, next_s))
        elif isinstance(eta, And):
            work.append((rest | ({eta.left, eta.right} - old_s), old_s | {eta}, next_s))
        elif isinstance(eta, Or):
            work.append((rest | ({eta.right} - old_s), old_s | {eta}, next_s))
            work.append((rest | ({eta.left} - old_s), old_s | {eta}, next_s))
        elif isinstance(eta, Next):
            work.append((rest, old_s | {eta}, next_s | {eta.sub}))
        elif isinstance(eta, Until):
            # eta = a U b: either b now, or a now and eta again next
            work.append((rest | ({eta.right} - old_s), old_s | {eta}, next_s))
            work.append((rest | ({eta.left} - old_s), old_s | {eta}, next_s | {eta}))
        elif isinstance(eta, Release):
            # eta = a R b: b now, and either a now or eta again next
            work.append((rest | ({eta.left, eta.right} - old_s), old_s | {eta}, next_s))
            work.append((rest | ({eta.right} - old_s), old_s | {eta}, next_s | {eta}))
        else:
            raise TypeError(f"formula not in negation normal form: {eta!r}")
    return results


def _branch_profile(old_s, next_s, untils):
    pos = frozenset(g.name for g in old_s if isinstance(g, Atom))
    neg = frozenset(g.sub.name for g in old_s if isinstance(g, Not))
    credit = tuple(u not in old_s or u.right in old_s for u in untils)
    return pos, neg, credit, next_s


def ltl_to_gba(f: LtlFormula, ap=None) -> GeneralizedBuchiAutomaton:
    """Translate an NNF formula into a generalized Buchi automaton.

    States are (pending obligations, acceptance credit) pairs produced by
    tableau expansion; acceptance has one set per Until subformula (credit
    bit true when the Until is not pending or was just fulfilled).
    """
    if not is_nnf(f):
        raise ValueError("ltl_to_gba requires a formula in negation normal form")
    alphabet = frozenset(ap) if ap is not None else formula_atoms(f)
    if not formula_atoms(f) <= alphabet:
        missing = sorted(formula_atoms(f) - alphabet)
        raise ValueError(f"formula atoms {missing} missing from declared AP")
    labels = label_universe(alphabet)
    canon = {a: a for a in labels}

    if isinstance(f, TrueF):
        delta = {0: {a: (0,) for a in labels}}
        return GeneralizedBuchiAutomaton(alphabet, 1, 0, delta, ())

    untils_set: set = set()
    _collect_untils(f, untils_set)
    untils = sorted(untils_set, key=repr)
    all_credit = tuple(True for _ in untils)

    state_index: dict = {}
    delta: dict = {}
    expansion_cache: dict = {}

    def intern(key):
        idx = state_index.get(key)
        if idx is None:
            idx = len(state_index)
            state_index[key] = idx
            worklist.append(key)
        return idx

    init_key = (frozenset([f]), all_credit)
    worklist: list = []
    intern(init_key)
    cursor = 0
    while cursor < len(worklist):
        key = worklist[cursor]
        cursor += 1
        src = state_index[key]
        pending = key[0]
        branches = expansion_cache.get(pending)
        if branches is None:
            branches = [
                _branch_profile(old_s, next_s, untils)
                for old_s, next_s in _expand_obligations(pending)
            ]
            expansion_cache[pending] = branches
        row = delta.setdefault(src, {})
        for pos, neg, credit, next_s in branches:
            dst = intern((next_s, credit))
            free = sorted(alphabet - pos - neg)
            for r in range(len(free) + 1):
                for combo in itertools.combinations(free, r):
                    a = canon[frozenset(pos.union(combo))]
                    targets = row.setdefault(a, [])
                    if dst not in targets:
                        targets.append(dst)
    for row in delta.values():
        for a in row:
            row[a] = tuple(sorted(row[a]))
    family = tuple(
        frozenset(idx for (pending, credit), idx in state_index.items() if credit[j])
        for j in range(len(untils))
    )
    return GeneralizedBuchiAutomaton(alphabet, len(state_index), 0, delta, family)


def degeneralize(g: GeneralizedBuchiAutomaton) -> BuchiAutomaton:
    """Counter construction collapsing an acceptance family to a single set.

    Layer j waits for a state of family set j; on leaving one, the counter
    advances (mod k).  An empty family accepts every run, so all states of
    the single layer become accepting.
    """
    k = len(g.accepting_family)
    if k == 0:
        return BuchiAutomaton(g.ap, g.n_states, g.init, _copy_delta(g.delta), frozenset(range(g.n_states)))
    if k == 1:
        return BuchiAutomaton(g.ap, g.n_states, g.init, _copy_delta(g.delta), frozenset(g.accepting_family[0]))

    index: dict = {}
    worklist: list = []

    def intern(q, layer):
        key = (q, layer)
        idx = index.get(key)
        if idx is None:
            idx = len(index)
            index[key] = idx
            worklist.append(key)
        return idx

    init = intern(g.init, 0)
    delta: dict = {}
    cursor = 0
    while cursor < len(worklist):
        q, layer = worklist[cursor]
        cursor += 1
        src = index[(q, layer)]
        advance = q in g.accepting_family[layer]
        nxt_layer = (layer + 1) % k if advance else layer
        row = delta.setdefault(src, {})
        for a, targets in g.delta.get(q, {}).items():
            row[a] = tuple(intern(t, nxt_layer) for t in targets)
    accepting = frozenset(
        idx for (q, layer), idx in index.items() if layer == 0 and q in g.accepting_family[0]
    )
    return BuchiAutomaton(g.ap, len(index), init, delta, accepting)


def _copy_delta(delta: dict) -> dict:
    return {src: dict(row) for src, row in delta.items()}


def make_nonblocking(b: BuchiAutomaton) -> BuchiAutomaton:
    """Complete `b` so every state has a successor on every label.

    Returns the input unchanged when already total; otherwise adds a single
    non-accepting trap state absorbing all missing transitions.
    """
    labels = label_universe(b.ap)
    missing = []
    for q in range(b.n_states):
        row = b.delta.get(q, {})
        for a in labels:
            if not row.get(a):
                missing.append((q, a))
    if not missing:
        return b
    trap = b.n_states
    delta = _copy_delta(b.delta)
    for q, a in missing:
        delta.setdefault(q, {})[a] = (trap,)
    delta[trap] = {a: (trap,) for a in labels}
    return BuchiAutomaton(b.ap, b.n_states + 1, b.init, delta, b.accepting)


def prune_unproductive(b: BuchiAutomaton) -> BuchiAutomaton:
    """Drop states that cannot contribute to any accepting run.

    Keeps states lying on a path from the initial state to a cycle through
    an accepting state; the recognized language is unchanged.  The initial
    state is always retained (as the empty-language stub if nothing is live).
    """
    adjacency = [set() for _ in range(b.n_states)]
    for src, row in b.delta.items():
        for targets in row.values():
            adjacency[src].update(targets)
    adjacency = [sorted(s) for s in adjacency]
    components = _tarjan(adjacency)
    live_seeds = set()
    for comp in components:
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or comp[0] in adjacency[comp[0]]
        if nontrivial and any(q in b.accepting for q in comp):
            live_seeds.update(comp_set)
    reverse = [[] for _ in range(b.n_states)]
    for src in range(b.n_states):
        for dst in adjacency[src]:
            reverse[dst].append(src)
    keep = set(live_seeds)
    stack = list(live_seeds)
    while stack:
        v = stack.pop()
        for u in reverse[v]:
            if u not in keep:
                keep.add(u)
                stack.append(u)
    keep.add(b.init)
    remap = {old: new for new, old in enumerate(sorted(keep))}
    delta: dict = {}
    for src, row in b.delta.items():
        if src not in remap:
            continue
        new_row = {}
        for a, targets in row.items():
            kept = tuple(remap[t] for t in targets if t in remap)
            if kept:
                new_row[a] = kept
        if new_row:
            delta[remap[src]] = new_row
    accepting = frozenset(remap[q] for q in b.accepting if q in remap)
    return BuchiAutomaton(b.ap, len(remap), remap[b.init], delta, accepting)


def _tarjan(adjacency: list) -> list:
    """Iterative Tarjan over an integer adjacency list; returns the SCCs."""
    n = len(adjacency)
    number = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list = []
    components = []
    counter = 0
    for root in range(n):
        if number[root] != -1:
            continue
        call = [(root, 0)]
        while call:
            v, idx = call.pop()
            if idx == 0:
                number[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(idx, len(adjacency[v])):
                w_ = adjacency[v][i]
                if number[w_] == -1:
                    call.append((v, i + 1))
                    call.append((w_, 0))
                    advanced = True
                    break
                if on_stack[w_]:
                    lowlink[v] = min(lowlink[v], number[w_])
            if advanced:
                continue
            if lowlink[v] == number[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                components.append(comp)
            if call:
                parent = call[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return components


def accepts_lasso(b: BuchiAutomaton, w: LassoWord) -> bool:
    """Whether some run of `b` on prefix . cycle^omega is accepting.

    Works on the finite graph of (automaton state, unrolled position) pairs:
    the word is accepted exactly when a reachable cycle of that graph
    contains a pair whose automaton state is accepting.
    """
    for letter in w.letters():
        if not letter <= b.ap:
            stray = sorted(letter - b.ap)
            raise ValueError(f"lasso label uses atoms outside automaton AP: {stray}")
    letters = w.letters()
    n_pos = len(letters)
    wrap_to = len(w.prefix)
    succ_pos = [i + 1 if i + 1 < n_pos else wrap_to for i in range(n_pos)]

    start = b.init * n_pos + 0
    node_adj: dict = {}
    frontier = [start]
    seen = {start}
    while frontier:
        node = frontier.pop()
        q, i = divmod(node, n_pos)
        nxt = succ_pos[i]
        targets = [t * n_pos + nxt for t in b.successors(q, letters[i])]
        node_adj[node] = targets
        for t in targets:
            if t not in seen:
                seen.add(t)
                frontier.append(t)

    ids = {node: k for k, node in enumerate(sorted(node_adj))}
    rev_ids = sorted(node_adj)
    adjacency = [[ids[t] for t in node_adj[node] if t in ids] for node in rev_ids]
    for comp in _tarjan(adjacency):
        has_loop = len(comp) > 1 or comp[0] in adjacency[comp[0]]
        if not has_loop:
            continue
        for k in comp:
            if (rev_ids[k] // n_pos) in b.accepting:
                return True
    return False


def automaton_to_json(b: BuchiAutomaton) -> dict:
    """Debug dump; field names are part of the CLI contract."""
    return {
        "format": 1,
        "ap": sorted(b.ap),
        "states": b.n_states,
        "init": b.init,
        "accepting": sorted(b.accepting),
        "transitions": [
            {"src": src, "label": sorted(label), "dst": dst}
            for src, label, dst in b.transitions()
        ],
    }


def automaton_to_dot(b: BuchiAutomaton) -> str:
    lines = ["digraph buchi {", "  rankdir=LR;", '  hidden [shape=point, label=""];']
    for q in range(b.n_states):
        shape = "doublecircle" if q in b.accepting else "circle"
        lines.append(f'  q{q} [shape={shape}, label="q{q}"];')
    lines.append(f"  hidden -> q{b.init};")
    for src, label, dst in b.transitions():
        text = "{" + ",".join(sorted(label)) + "}"
        lines.append(f'  q{src} -> q{dst} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines)
