"""Seeded random product automata for benchmarking the planners.

Graphs follow the directed Erdos-Renyi G(n, p) model with self-loops
allowed: every ordered state pair becomes an edge independently with
probability p.  Acceptance flags and weight bits are independent Bernoulli
draws; everything is reproducible from the seed, and only the fragment
reachable from state 0 is kept (reindexed in BFS order).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .product import ProductAutomaton


@dataclass(frozen=True)
class RandomSpec:
    n_states: int
    edge_prob: float | None = None
    mean_degree: float | None = None
    accepting_prob: float = 0.2
    n_soft: int = 0
    bit_prob: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.n_states < 1:
            raise ValueError("n_states must be at least 1")
        if self.n_soft < 0:
            raise ValueError("n_soft must be nonnegative")
        if (self.edge_prob is None) == (self.mean_degree is None):
            raise ValueError("set exactly one of edge_prob or mean_degree")
        for name in ("edge_prob", "accepting_prob", "bit_prob"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.mean_degree is not None and self.mean_degree < 0:
            raise ValueError("mean_degree must be nonnegative")

    @property
    def probability(self) -> float:
        if self.edge_prob is not None:
            return self.edge_prob
        return min(1.0, self.mean_degree / self.n_states)


def paper_row_spec(size: int, n_soft: int, seed: int, bit_prob: float = 0.2) -> RandomSpec:
    """Configuration of one experiment row: ~5 edges per state, 20% accepting."""
    return RandomSpec(
        n_states=size,
        mean_degree=5.0,
        accepting_prob=0.2,
        n_soft=n_soft,
        bit_prob=bit_prob,
        seed=seed,
    )


def generate_random_product(spec: RandomSpec) -> ProductAutomaton:
    """Sample a product automaton; same spec (and seed) yields identical output."""
    rng = random.Random(spec.seed)
    n = spec.n_states
    p = spec.probability
    raw_adj = [[v for v in range(n) if rng.random() < p] for _ in range(n)]
    raw_accepting = [rng.random() < spec.accepting_prob for _ in range(n)]
    raw_weights = []
    for _ in range(n):
        mask = 0
        for bit in range(spec.n_soft):
            if rng.random() < spec.bit_prob:
                mask |= 1 << bit
        raw_weights.append(mask)

    # restrict to the fragment reachable from state 0, reindexed in BFS order
    remap = {0: 0}
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in raw_adj[v]:
            if w not in remap:
                remap[w] = len(order)
                order.append(w)
                queue.append(w)
    adjacency = tuple(
        tuple(sorted(remap[w] for w in raw_adj[v] if w in remap)) for v in order
    )
    return ProductAutomaton(
        n_soft=spec.n_soft,
        n_states=len(order),
        init=0,
        adjacency=adjacency,
        accepting=tuple(raw_accepting[v] for v in order),
        weights=tuple(raw_weights[v] for v in order),
    )
