"""Independent reference implementations used only to cross-check the library.

Everything here deliberately avoids the code paths under test: a second SCC
algorithm (Kosaraju), unit-weight Dijkstra, exhaustive walk enumeration, and
brute-force product/tuple enumeration.
"""

from __future__ import annotations

import heapq
import itertools
import random

from softltl.ltl import (
    And,
    Atom,
    Eventually,
    FalseF,
    Globally,
    Implies,
    LassoWord,
    Next,
    Not,
    Or,
    TrueF,
    Until,
)


def shift_word(w: LassoWord) -> LassoWord:
    """Drop the first letter of the infinite word (rotating the cycle)."""
    if w.prefix:
        return LassoWord(w.prefix[1:], w.cycle)
    return LassoWord((), w.cycle[1:] + w.cycle[:1])


def all_labels(ap) -> list[frozenset]:
    atoms = sorted(ap)
    out = []
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            out.append(frozenset(combo))
    return out


def all_lasso_words(ap, max_total: int) -> list[LassoWord]:
    """Every lasso word with |prefix| + |cycle| <= max_total over 2^ap."""
    labels = all_labels(ap)
    words = []
    for total in range(1, max_total + 1):
        for cycle_len in range(1, total + 1):
            prefix_len = total - cycle_len
            for letters in itertools.product(labels, repeat=total):
                words.append(LassoWord(letters[:prefix_len], letters[prefix_len:]))
    return words


def random_formula(rng: random.Random, atoms, depth: int):
    """Random user-facing formula (no Release) of bounded depth."""
    if depth == 0 or rng.random() < 0.2:
        choices = [TrueF(), FalseF()] + [Atom(a) for a in atoms]
        return rng.choice(choices)
    op = rng.choice(["not", "and", "or", "implies", "next", "until", "ev", "glob"])
    if op == "not":
        return Not(random_formula(rng, atoms, depth - 1))
    if op == "next":
        return Next(random_formula(rng, atoms, depth - 1))
    if op == "ev":
        return Eventually(random_formula(rng, atoms, depth - 1))
    if op == "glob":
        return Globally(random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    return {"and": And, "or": Or, "implies": Implies, "until": Until}[op](left, right)


def kosaraju_sccs(adjacency: list[list[int]]) -> list[list[int]]:
    """SCC partition via Kosaraju's two-pass algorithm (iterative)."""
    n = len(adjacency)
    order = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        stack = [(root, 0)]
        seen[root] = True
        while stack:
            v, idx = stack.pop()
            if idx < len(adjacency[v]):
                stack.append((v, idx + 1))
                w = adjacency[v][idx]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                order.append(v)
    reverse: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in adjacency[v]:
            reverse[w].append(v)
    assigned = [False] * n
    components = []
    for v in reversed(order):
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
        components.append(comp)
    return components


def dijkstra_unit_distances(adjacency: list[list[int]], source: int) -> list[float]:
    """Unit-weight Dijkstra; oracle for BFS shortest path lengths."""
    dist = [float("inf")] * len(adjacency)
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w in adjacency[v]:
            if d + 1 < dist[w]:
                dist[w] = d + 1
                heapq.heappush(heap, (d + 1, w))
    return dist


def enumerate_covering_walks(adjacency, members, start, target_sets, max_len):
    """Shortest closed walk start -> start (inside `members`) meeting every
    target set, found by exhaustive enumeration of walks up to max_len edges.
    Returns its edge count, or None."""
    member_set = set(members)
    best = None
    initial_met = frozenset(j for j, t in enumerate(target_sets) if start in t)
    frontier = [(start, initial_met, 0)]
    seen = {(start, initial_met): 0}
    while frontier:
        node, met, length = frontier.pop(0)
        if length >= max_len:
            continue
        for succ in adjacency[node]:
            if succ not in member_set:
                continue
            met2 = met | frozenset(j for j, t in enumerate(target_sets) if succ in t)
            if succ == start and len(met2) == len(target_sets):
                return length + 1
            key = (succ, met2)
            if key not in seen or seen[key] > length + 1:
                seen[key] = length + 1
                frontier.append((succ, met2, length + 1))
    return best


def random_digraph(rng: random.Random, n: int, p: float) -> list[list[int]]:
    return [[w for w in range(n) if rng.random() < p] for _ in range(n)]


def gba_accepts_lasso_naive(gba, word: LassoWord) -> bool:
    """Generalized-Buchi membership decided from first principles.

    Builds the (state, position) graph of all runs over the folded lasso and
    looks, via Kosaraju SCCs, for a reachable cycle meeting every acceptance
    set of the family.
    """
    letters = word.letters()
    n_pos = len(letters)
    wrap_to = len(word.prefix)

    nodes = {}
    adjacency = []

    def intern(q, i):
        key = (q, i)
        if key not in nodes:
            nodes[key] = len(adjacency)
            adjacency.append(None)
            todo.append(key)
        return nodes[key]

    todo = []
    intern(gba.init, 0)
    k = 0
    while k < len(todo):
        q, i = todo[k]
        k += 1
        nxt = i + 1 if i + 1 < n_pos else wrap_to
        adjacency[nodes[(q, i)]] = [intern(t, nxt) for t in gba.successors(q, letters[i])]

    family = gba.accepting_family
    for comp in kosaraju_sccs(adjacency):
        has_loop = len(comp) > 1 or comp[0] in adjacency[comp[0]]
        if not has_loop:
            continue
        states_here = {q for (q, i), idx in nodes.items() if idx in set(comp)}
        if all(states_here & fj for fj in family):
            return True
    return False
