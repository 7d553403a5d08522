"""Environment model: finite labeled transition system plus lasso-shaped paths.

State identifiers are strings in documents and dense integer indices
internally; every loader error names the offending element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ltl import LassoWord


class InvalidTransitionSystem(ValueError):
    pass


class InvalidPath(ValueError):
    pass


@dataclass(eq=False)
class TransitionSystem:
    ap: frozenset
    state_ids: tuple
    labels: tuple  # per-state frozenset of atoms
    adjacency: tuple  # per-state sorted tuple of successor indices
    init: int

    def __post_init__(self):
        self.index_of = {sid: i for i, sid in enumerate(self.state_ids)}

    @property
    def n_states(self) -> int:
        return len(self.state_ids)

    def label_of(self, state: int) -> frozenset:
        return self.labels[state]


def load_ts(document) -> TransitionSystem:
    """Validate a parsed instance document and build a TransitionSystem.

    Rejects schema violations, labels outside AP, dangling edge endpoints,
    and blocking states (states without outgoing edges).
    """
    if not isinstance(document, dict):
        raise InvalidTransitionSystem("instance document must be a JSON object")
    for key in ("ap", "states", "init", "edges"):
        if key not in document:
            raise InvalidTransitionSystem(f"missing required key '{key}'")

    ap_list = document["ap"]
    if not isinstance(ap_list, list) or not all(isinstance(a, str) and a for a in ap_list):
        raise InvalidTransitionSystem("'ap' must be a list of nonempty strings")
    if len(set(ap_list)) != len(ap_list):
        raise InvalidTransitionSystem("'ap' contains duplicate atoms")
    ap = frozenset(ap_list)

    states = document["states"]
    if not isinstance(states, list) or not states:
        raise InvalidTransitionSystem("'states' must be a nonempty list")
    state_ids = []
    labels = []
    label_cache: dict = {}
    for entry in states:
        if not isinstance(entry, dict) or "id" not in entry or "labels" not in entry:
            raise InvalidTransitionSystem("each state needs 'id' and 'labels'")
        sid = entry["id"]
        if not isinstance(sid, str) or not sid:
            raise InvalidTransitionSystem("state ids must be nonempty strings")
        if sid in state_ids:
            raise InvalidTransitionSystem(f"duplicate state id '{sid}'")
        label_list = entry["labels"]
        if not isinstance(label_list, list):
            raise InvalidTransitionSystem(f"labels of state '{sid}' must be a list")
        for atom in label_list:
            if atom not in ap:
                raise InvalidTransitionSystem(
                    f"state '{sid}' is labeled with unknown atom '{atom}'"
                )
        label = frozenset(label_list)
        label = label_cache.setdefault(label, label)
        state_ids.append(sid)
        labels.append(label)
    index_of = {sid: i for i, sid in enumerate(state_ids)}

    init_id = document["init"]
    if init_id not in index_of:
        raise InvalidTransitionSystem(f"initial state '{init_id}' is not a declared state")

    edges = document["edges"]
    if not isinstance(edges, list):
        raise InvalidTransitionSystem("'edges' must be a list of [src, dst] pairs")
    successor_sets = [set() for _ in state_ids]
    for edge in edges:
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise InvalidTransitionSystem(f"malformed edge entry {edge!r}")
        src, dst = edge
        if src not in index_of:
            raise InvalidTransitionSystem(f"edge source '{src}' is not a declared state")
        if dst not in index_of:
            raise InvalidTransitionSystem(f"edge target '{dst}' is not a declared state")
        successor_sets[index_of[src]].add(index_of[dst])
    for i, succ in enumerate(successor_sets):
        if not succ:
            raise InvalidTransitionSystem(
                f"blocking state '{state_ids[i]}' has no outgoing transition"
            )

    return TransitionSystem(
        ap=ap,
        state_ids=tuple(state_ids),
        labels=tuple(labels),
        adjacency=tuple(tuple(sorted(s)) for s in successor_sets),
        init=index_of[init_id],
    )


def ts_to_json(ts: TransitionSystem) -> dict:
    return {
        "ap": sorted(ts.ap),
        "states": [
            {"id": sid, "labels": sorted(ts.labels[i])}
            for i, sid in enumerate(ts.state_ids)
        ],
        "init": ts.state_ids[ts.init],
        "edges": [
            [ts.state_ids[src], ts.state_ids[dst]]
            for src in range(ts.n_states)
            for dst in ts.adjacency[src]
        ],
    }


@dataclass(frozen=True)
class TsPath:
    """Infinite path in lasso form: finite prefix then a repeated cycle."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("path cycle must be nonempty")


def _check_edge(ts: TransitionSystem, src: int, dst: int, role: str):
    if dst not in ts.adjacency[src]:
        raise InvalidPath(
            f"{role}: no transition {ts.state_ids[src]!r} -> {ts.state_ids[dst]!r}"
        )


def trace_of(ts: TransitionSystem, path: TsPath) -> LassoWord:
    """Label sequence of a path, preserving the prefix/cycle split.

    Raises InvalidPath when consecutive states (including the prefix-to-cycle
    junction and the cycle wrap) are not related by the transition relation.
    """
    states = path.prefix + path.cycle
    for s in states:
        if not (0 <= s < ts.n_states):
            raise InvalidPath(f"state index {s} out of range")
    for i in range(len(path.prefix) - 1):
        _check_edge(ts, path.prefix[i], path.prefix[i + 1], f"prefix step {i}")
    if path.prefix:
        _check_edge(ts, path.prefix[-1], path.cycle[0], "prefix-to-cycle junction")
    for i in range(len(path.cycle) - 1):
        _check_edge(ts, path.cycle[i], path.cycle[i + 1], f"cycle step {i}")
    _check_edge(ts, path.cycle[-1], path.cycle[0], "cycle wrap")
    return LassoWord(
        tuple(ts.labels[s] for s in path.prefix),
        tuple(ts.labels[s] for s in path.cycle),
    )
