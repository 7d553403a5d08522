"""Case-study problem instances: hospital deliveries and retirement home.

The environments are reconstructions built from the published prose, not
copies of unpublished figures, so trajectory strings may differ from the
originals; the optimal satisfied-constraint sets are the contract.

Hospital modeling choices:
  - Locations w (warehouse), p (primary care), e (emergency), h (pharmacy),
    n (maintenance) all connect through a corridor c; rooms do not touch.
  - A state is (location, carried items); carried items are subsets of
    {f, m}.  Labels are the location atom plus the carried-item atoms.
  - Items are picked up only at the warehouse (one per step), can be dropped
    anywhere, and movement keeps the inventory.
  This makes "deliver x to room R" expressible as reaching R while carrying
  x, and yields exactly the published optimum {1, 3}: constraints 3 and 4
  clash on every warehouse exit, and constraint 2 blocks primary-care
  deliveries outright since they always arrive from the corridor carrying f.

Retirement-home modeling choices:
  - One hallway state (no atoms) connects both common rooms and the toy
    room; every common-room state performs an act (juggling g or balloons
    b), and the robot can switch acts without leaving the room.
  - The toy room can be lingered in; the hallway has a waiting self-loop.
"""

from __future__ import annotations

import json
from pathlib import Path

_HOSPITAL_ROOMS = ["w", "p", "e", "h", "n"]
_ITEM_SETS = [(), ("f",), ("m",), ("f", "m")]


def _hospital_state_id(loc: str, items) -> str:
    return loc if not items else loc + "_" + "".join(items)


def hospital_problem() -> dict:
    states = []
    edges = []
    for loc in _HOSPITAL_ROOMS + ["c"]:
        for items in _ITEM_SETS:
            states.append(
                {"id": _hospital_state_id(loc, items), "labels": [loc, *items]}
            )
    for items in _ITEM_SETS:
        for room in _HOSPITAL_ROOMS:
            edges.append([_hospital_state_id(room, items), _hospital_state_id("c", items)])
            edges.append([_hospital_state_id("c", items), _hospital_state_id(room, items)])
    # drops: any location, one item at a time
    for loc in _HOSPITAL_ROOMS + ["c"]:
        for items in _ITEM_SETS:
            for dropped in items:
                kept = tuple(i for i in items if i != dropped)
                edges.append(
                    [_hospital_state_id(loc, items), _hospital_state_id(loc, kept)]
                )
    # pickups: warehouse only, one item at a time
    for items in _ITEM_SETS:
        for gained in ("f", "m"):
            if gained in items:
                continue
            after = tuple(sorted(set(items) | {gained}, key="fm".index))
            edges.append([_hospital_state_id("w", items), _hospital_state_id("w", after)])

    return {
        "format": 1,
        "comment": (
            "Hospital deliveries: reconstruction with a central corridor, "
            "warehouse-only pickups, and drop-anywhere inventory moves."
        ),
        "ts": {
            "ap": ["w", "c", "p", "e", "h", "n", "f", "m"],
            "states": states,
            "init": "w",
            "edges": edges,
        },
        "hard": "G F (p & f) & G F (e & f) & G F (h & m) & G F n",
        "soft": [
            "G ((p & f) -> X (!p U (e & f))) & G ((e & f) -> X (!e U (p & f)))",
            "G ((c & f) -> (!p U e))",
            "G (!w -> !(f & m))",
            "G ((w & X c) -> X (f & m))",
        ],
    }


_RETIREMENT_STATES = [
    {"id": "hall", "labels": []},
    {"id": "r1_juggle", "labels": ["r1", "g"]},
    {"id": "r1_balloon", "labels": ["r1", "b"]},
    {"id": "r2_juggle", "labels": ["r2", "g"]},
    {"id": "r2_balloon", "labels": ["r2", "b"]},
    {"id": "toys", "labels": ["t"]},
]

_RETIREMENT_EDGES = [
    ["hall", "hall"],
    ["hall", "r1_juggle"],
    ["r1_juggle", "hall"],
    ["hall", "r1_balloon"],
    ["r1_balloon", "hall"],
    ["hall", "r2_juggle"],
    ["r2_juggle", "hall"],
    ["hall", "r2_balloon"],
    ["r2_balloon", "hall"],
    ["r1_juggle", "r1_balloon"],
    ["r1_balloon", "r1_juggle"],
    ["r2_juggle", "r2_balloon"],
    ["r2_balloon", "r2_juggle"],
    ["hall", "toys"],
    ["toys", "hall"],
    ["toys", "toys"],
]

_RETIREMENT_SOFTS = [
    "G ((r1 & b) -> X ((!b & !g) U (r2 & b)))",
    "G F (r1 & g) & G F (r1 & b)",
    "G (r2 -> !b)",
    "G ((r2 & b) -> F (r2 & g))",
    "G (r1 -> X !r1) & G (r2 -> X !r2)",
    "G ((!r1 & X r1) -> X X r1)",
]


def retirement_problem(swapped: bool = False) -> dict:
    softs = list(_RETIREMENT_SOFTS)
    if swapped:
        softs[4], softs[5] = softs[5], softs[4]
    return {
        "format": 1,
        "comment": (
            "Retirement home social robot; constraints 5 and 6 swap their "
            "priorities in the second variant."
            if swapped
            else "Retirement home social robot, original priority order."
        ),
        "ts": {
            "ap": ["r1", "r2", "t", "g", "b"],
            "states": [dict(s) for s in _RETIREMENT_STATES],
            "init": "hall",
            "edges": [list(e) for e in _RETIREMENT_EDGES],
        },
        "hard": "G F r1 & G F r2 & G F t",
        "soft": softs,
    }


FIXTURE_BUILDERS = {
    "hospital.json": hospital_problem,
    "retirement_v1.json": lambda: retirement_problem(swapped=False),
    "retirement_v2.json": lambda: retirement_problem(swapped=True),
}


def write_fixtures(directory) -> list:
    """Write the three case-study problem files; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, builder in FIXTURE_BUILDERS.items():
        path = directory / name
        path.write_text(json.dumps(builder(), indent=2) + "\n")
        written.append(path)
    return written
