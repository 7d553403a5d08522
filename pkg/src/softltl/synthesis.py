"""Greedy minimum-cost accepting-lasso synthesis over a weighted product.

Two passes: an iterative Tarjan decomposition annotating each strongly
connected component with its acceptance flag and combined weight vector,
then prefix/suffix construction by breadth-first search.  The suffix is a
covering cycle inside the optimal component built leg by leg: repeatedly run
BFS to the nearest state of any still-unmet target set, then close the loop
back to the cycle's midpoint.

All tie-breaking is deterministic (smallest discovery number for tied
components, smallest state index within a BFS layer), so identical inputs
always yield identical lassos.  The decomposition and the BFS tree from the
initial state depend only on the graph, never on the weights; they are
cached on the product so that re-prioritizing soft constraints costs only a
weight permutation plus a few local searches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .product import Cost, ProductAutomaton, cost_of_mask, mask_to_vector
from .transition_system import TsPath


@dataclass(frozen=True)
class SccInfo:
    """One strongly connected component with planner-relevant annotations."""

    index: int  # position within the decomposition
    members: tuple  # sorted state indices
    leader: int  # Tarjan representative: discovery number equals lowlink
    leader_order: int  # leader's discovery number, used for tie-breaking
    accepting: bool  # has an accepting state and supports a cycle
    weight_mask: int  # bitwise OR of member weight masks
    n_soft: int

    @property
    def weight_vector(self) -> tuple:
        return mask_to_vector(self.weight_mask, self.n_soft)

    @property
    def cost(self) -> Cost:
        return cost_of_mask(self.weight_mask, self.n_soft)


@dataclass(frozen=True)
class Lasso:
    """Accepting lasso prefix . cycle^omega over product states."""

    prefix: tuple
    cycle: tuple
    inf: tuple  # weight bits that hold infinitely often
    cost: Cost
    product: ProductAutomaton

    @property
    def satisfied(self) -> tuple:
        """1-based indices of soft constraints certified by the cycle."""
        return tuple(i + 1 for i, bit in enumerate(self.inf) if bit)

    @property
    def length(self) -> int:
        return len(self.prefix) + len(self.cycle)


def _structural_sccs(p: ProductAutomaton) -> dict:
    """Iterative Tarjan; caches the weight-independent decomposition on `p`."""
    if p.scc_cache is not None:
        return p.scc_cache
    adjacency = p.adjacency
    n = p.n_states
    number = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list = []
    counter = 0
    comp_members: list = []
    comp_leader: list = []
    comp_leader_order: list = []
    comp_of = [-1] * n
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
            row = adjacency[v]
            descended = False
            for i in range(idx, len(row)):
                w = row[i]
                if number[w] == -1:
                    call.append((v, i + 1))
                    call.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    if number[w] < lowlink[v]:
                        lowlink[v] = number[w]
            if descended:
                continue
            if lowlink[v] == number[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    comp_of[u] = len(comp_members)
                    if u == v:
                        break
                comp_members.append(tuple(sorted(comp)))
                comp_leader.append(v)
                comp_leader_order.append(number[v])
            if call:
                parent = call[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
    has_cycle = []
    has_accepting = []
    for members in comp_members:
        if len(members) > 1:
            cyc = True
        else:
            m = members[0]
            cyc = m in p.adjacency[m]
        has_cycle.append(cyc)
        has_accepting.append(any(p.accepting[m] for m in members))
    cache = {
        "members": comp_members,
        "leader": comp_leader,
        "leader_order": comp_leader_order,
        "has_cycle": has_cycle,
        "has_accepting": has_accepting,
        "comp_of": comp_of,
        "accepting_ids": [
            k for k in range(len(comp_members)) if has_cycle[k] and has_accepting[k]
        ],
    }
    p.scc_cache = cache
    return cache


def _scc_info_at(p: ProductAutomaton, cache: dict, k: int) -> SccInfo:
    mask = 0
    for m in cache["members"][k]:
        mask |= p.weights[m]
    return SccInfo(
        index=k,
        members=cache["members"][k],
        leader=cache["leader"][k],
        leader_order=cache["leader_order"][k],
        accepting=cache["has_cycle"][k] and cache["has_accepting"][k],
        weight_mask=mask,
        n_soft=p.n_soft,
    )


def _optimal_scc(p: ProductAutomaton) -> SccInfo | None:
    """Fast selection: weight ORs touch only the accepting components."""
    cache = _structural_sccs(p)
    weights = p.weights
    best_key = None
    best_k = None
    best_mask = 0
    for k in cache["accepting_ids"]:
        mask = 0
        for m in cache["members"][k]:
            mask |= weights[m]
        key = (cost_of_mask(mask, p.n_soft).value, cache["leader_order"][k])
        if best_key is None or key < best_key:
            best_key, best_k, best_mask = key, k, mask
    if best_k is None:
        return None
    return SccInfo(
        index=best_k,
        members=cache["members"][best_k],
        leader=cache["leader"][best_k],
        leader_order=cache["leader_order"][best_k],
        accepting=True,
        weight_mask=best_mask,
        n_soft=p.n_soft,
    )


def strongly_connected_components(p: ProductAutomaton) -> list:
    """SCC partition of the reachable product with leaders and combined weights."""
    if p.scc_info_cache is not None:
        return p.scc_info_cache
    cache = _structural_sccs(p)
    out = [_scc_info_at(p, cache, k) for k in range(len(cache["members"]))]
    p.scc_info_cache = out
    return out


def select_optimal_scc(sccs) -> SccInfo | None:
    """Accepting component of minimum combined-weight cost.

    Cost ties break toward the smallest leader discovery number so the
    planner output is reproducible.
    """
    best = None
    best_key = None
    for scc in sccs:
        if not scc.accepting:
            continue
        key = (scc.cost.value, scc.leader_order)
        if best_key is None or key < best_key:
            best, best_key = scc, key
    return best


def _bfs_tree_from_init(p: ProductAutomaton):
    if p.bfs_tree_cache is not None:
        return p.bfs_tree_cache
    dist = [-1] * p.n_states
    parent = [-1] * p.n_states
    dist[p.init] = 0
    queue = deque([p.init])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in p.adjacency[v]:
            if dist[w] == -1:
                dist[w] = d
                parent[w] = v
                queue.append(w)
    p.bfs_tree_cache = (dist, parent)
    return p.bfs_tree_cache


def _path_from_tree(parent, target) -> list:
    path = [target]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def bfs_shortest_path(p: ProductAutomaton, source: int, target: int) -> list:
    """Shortest path by FIFO BFS, visiting neighbors in ascending state index."""
    if source == p.init:
        dist, parent = _bfs_tree_from_init(p)
        if dist[target] == -1:
            raise ValueError(f"state {target} unreachable from {source}")
        return _path_from_tree(parent, target)
    if source == target:
        return [source]
    parent = {source: -1}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in p.adjacency[v]:
            if w not in parent:
                parent[w] = v
                if w == target:
                    path = [w]
                    while parent[path[-1]] != -1:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(w)
    raise ValueError(f"state {target} unreachable from {source}")


# --- covering-cycle machinery ----------------------------------------------
#
# Internally a target family is a bitmask per state: bit 0 marks accepting
# states of the product, bit i+1 marks states realizing soft weight bit i.
# The public operation below accepts explicit state sets instead.


def _hit_bits(p: ProductAutomaton, state: int, family_mask: int) -> int:
    bits = p.weights[state] << 1
    if p.accepting[state]:
        bits |= 1
    return bits & family_mask


def _leg_to_unmet(p, comp_of, scc_idx, start, unmet, family_mask):
    """Shortest path inside the component from `start` to the nearest state
    hitting any unmet family bit; smallest state index wins within a layer."""
    if _hit_bits(p, start, family_mask) & unmet:
        return [start]
    parent = {start: -1}
    layer = [start]
    while layer:
        nxt = []
        hits = []
        for v in layer:
            for w in p.adjacency[v]:
                if comp_of[w] == scc_idx and w not in parent:
                    parent[w] = v
                    nxt.append(w)
                    if _hit_bits(p, w, family_mask) & unmet:
                        hits.append(w)
        if hits:
            end = min(hits)
            path = [end]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        layer = nxt
    raise ValueError("target sets unreachable inside the component")


def _leg_back_to_start(p, comp_of, scc_idx, current, start) -> list:
    """Closing leg of the cycle: shortest path back to `start` of >= 1 edge."""
    if current != start:
        parent = {current: -1}
        layer = [current]
        while layer:
            nxt = []
            for v in layer:
                for w in p.adjacency[v]:
                    if comp_of[w] == scc_idx and w not in parent:
                        parent[w] = v
                        if w == start:
                            path = [w]
                            while parent[path[-1]] != -1:
                                path.append(parent[path[-1]])
                            path.reverse()
                            return path
                        nxt.append(w)
            layer = nxt
        raise ValueError("cycle start unreachable inside the component")
    # shortest closed walk: BFS distances from start, then the best incoming edge
    dist = {start: 0}
    parent = {start: -1}
    queue = deque([start])
    best = None
    while queue:
        v = queue.popleft()
        if best is not None and dist[v] + 1 >= best[0]:
            break
        for w in p.adjacency[v]:
            if comp_of[w] != scc_idx:
                continue
            if w == start:
                key = (dist[v] + 1, v)
                if best is None or key < best:
                    best = key
            if w not in dist:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
    if best is None:
        raise ValueError("component has no cycle through the start state")
    path = [best[1]]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    path.reverse()
    return path + [start]


def _masked_covering_cycle(p, comp_of, scc: SccInfo, start: int) -> list:
    family_mask = 1 | (scc.weight_mask << 1)
    unmet = family_mask & ~_hit_bits(p, start, family_mask)
    walk = [start]
    current = start
    while unmet:
        leg = _leg_to_unmet(p, comp_of, scc.index, current, unmet, family_mask)
        walk.extend(leg[1:])
        current = leg[-1]
        unmet &= ~_hit_bits(p, current, family_mask)
    closing = _leg_back_to_start(p, comp_of, scc.index, current, start)
    walk.extend(closing[1:])
    return walk[:-1]


def covering_targets(p: ProductAutomaton, scc: SccInfo) -> list:
    """Target family for the suffix: accepting states of the component plus,
    for every weight bit the component can realize, the states realizing it."""
    members = scc.members
    targets = [frozenset(m for m in members if p.accepting[m])]
    for i in range(p.n_soft):
        if scc.weight_mask >> i & 1:
            targets.append(frozenset(m for m in members if p.weights[m] >> i & 1))
    return targets


def greedy_covering_cycle(p: ProductAutomaton, scc: SccInfo, start: int, targets) -> list:
    """Cycle from `start` within the component visiting every target set.

    Repeated BFS legs walk to the nearest state of any unmet set (marking
    every set that state belongs to), then one final BFS closes the loop.
    The returned sequence lists the cycle states once; the wrap edge back to
    `start` is implied.  Revisits are allowed: the cycle need not be simple.
    """
    comp_of = _structural_sccs(p)["comp_of"]
    if comp_of[start] != scc.index or start not in scc.members:
        raise ValueError("cycle start must belong to the component")
    targets = [frozenset(t) for t in targets]
    unmet = [t for t in targets if start not in t]
    walk = [start]
    current = start
    while unmet:
        leg = _set_leg(p, comp_of, scc.index, current, unmet)
        walk.extend(leg[1:])
        current = leg[-1]
        unmet = [t for t in unmet if current not in t]
    closing = _leg_back_to_start(p, comp_of, scc.index, current, start)
    walk.extend(closing[1:])
    return walk[:-1]


def _set_leg(p, comp_of, scc_idx, start, unmet):
    if any(start in t for t in unmet):
        return [start]
    parent = {start: -1}
    layer = [start]
    while layer:
        nxt = []
        hits = []
        for v in layer:
            for w in p.adjacency[v]:
                if comp_of[w] == scc_idx and w not in parent:
                    parent[w] = v
                    nxt.append(w)
                    if any(w in t for t in unmet):
                        hits.append(w)
        if hits:
            end = min(hits)
            path = [end]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        layer = nxt
    raise ValueError("target sets unreachable inside the component")


def _variant_midpoint(p: ProductAutomaton, comp_of, scc: SccInfo) -> int:
    """First state reached by BFS from the leader that lies in any target set."""
    family_mask = 1 | (scc.weight_mask << 1)
    if _hit_bits(p, scc.leader, family_mask):
        return scc.leader
    seen = {scc.leader}
    layer = [scc.leader]
    while layer:
        nxt = []
        hits = []
        for v in layer:
            for w in p.adjacency[v]:
                if comp_of[w] == scc.index and w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if _hit_bits(p, w, family_mask):
                        hits.append(w)
        if hits:
            return min(hits)
        layer = nxt
    return scc.leader  # accepting component always intersects the union


def minimum_cost_accepting_lasso(
    p: ProductAutomaton, midpoint_variant: bool = False
) -> Lasso | None:
    """Greedy synthesis of an accepting lasso of minimum weight cost.

    Returns None exactly when the product has no accepting component, i.e.
    its language is empty.  The lasso's prefix runs from the initial state to
    the cycle midpoint (the optimal component's leader, or with the variant
    enabled, the first target state BFS finds from the leader).
    """
    optimal = _optimal_scc(p)
    if optimal is None:
        return None
    comp_of = _structural_sccs(p)["comp_of"]
    midpoint = optimal.leader
    if midpoint_variant:
        midpoint = _variant_midpoint(p, comp_of, optimal)
    to_midpoint = bfs_shortest_path(p, p.init, midpoint)
    cycle = _masked_covering_cycle(p, comp_of, optimal, midpoint)
    return Lasso(
        prefix=tuple(to_midpoint[:-1]),
        cycle=tuple(cycle),
        inf=optimal.weight_vector,
        cost=optimal.cost,
        product=p,
    )


def project_to_ts(lasso: Lasso) -> TsPath:
    """Transition-system components of the lasso, keeping the prefix/cycle split."""
    p = lasso.product
    if p.ts_component is None:
        raise ValueError("product has no transition-system backing to project onto")
    comp = p.ts_component
    return TsPath(
        prefix=tuple(comp[s] for s in lasso.prefix),
        cycle=tuple(comp[s] for s in lasso.cycle),
    )


def _permute_mask(mask: int, sources) -> int:
    out = 0
    for new_bit, old_bit in enumerate(sources):
        if mask >> old_bit & 1:
            out |= 1 << new_bit
    return out


def resynthesize_with_priorities(p: ProductAutomaton, order) -> Lasso | None:
    """Re-run synthesis after permuting soft-constraint priorities.

    `order` lists original 1-based constraint indices in their new priority
    order; the state weights are permuted accordingly and the cached,
    weight-independent component structure is reused, so no product rebuild
    happens.  Equivalent to building afresh with the permuted soft list.
    """
    order = list(order)
    if sorted(order) != list(range(1, p.n_soft + 1)):
        raise ValueError(f"invalid permutation {order!r} of 1..{p.n_soft}")
    sources = [i - 1 for i in order]
    table = {mask: _permute_mask(mask, sources) for mask in set(p.weights)}
    clone = p.with_weights([table[mask] for mask in p.weights])
    return minimum_cost_accepting_lasso(clone)


def validate_lasso(lasso: Lasso) -> None:
    """Structural audit of every Lasso invariant; raises on violation."""
    p = lasso.product
    if not lasso.cycle:
        raise AssertionError("empty cycle")
    chain = list(lasso.prefix) + list(lasso.cycle)
    if chain[0] != p.init:
        raise AssertionError("lasso does not start at the initial state")
    for a, b in zip(chain, chain[1:]):
        if b not in p.adjacency[a]:
            raise AssertionError(f"missing product edge {a} -> {b}")
    if lasso.cycle[0] not in p.adjacency[lasso.cycle[-1]]:
        raise AssertionError("missing cycle wrap edge")
    if not any(p.accepting[s] for s in lasso.cycle):
        raise AssertionError("cycle contains no accepting state")
    seen_mask = 0
    for s in lasso.cycle:
        seen_mask |= p.weights[s]
    if mask_to_vector(seen_mask, p.n_soft) != lasso.inf:
        raise AssertionError("inf vector disagrees with cycle weights")
    if cost_of_mask(seen_mask, p.n_soft) != lasso.cost:
        raise AssertionError("cost disagrees with inf vector")
