"""Benchmark harness comparing the greedy planner against the exact baseline.

For every graph size a batch of seeded random products is generated; the
greedy planner and the budgeted brute force run on each, and per-size rows
aggregate times, lasso sizes, and approximation ratios (greedy length over
shortest length).  Following the original accounting, averages ignore trials
whose brute-force run exceeded its budget, so rows for large sizes
understate the true brute-force cost.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .baseline import brute_force_shortest_lasso
from .random_products import RandomSpec, generate_random_product
from .synthesis import minimum_cost_accepting_lasso


@dataclass(frozen=True)
class TrialOutcome:
    size: int
    trial: int
    seed: int
    feasible: bool
    greedy_time_s: float
    greedy_len: int | None
    bf_time_s: float | None
    bf_len: int | None
    bf_ok: bool
    satisfied_count: int | None

    @property
    def ratio(self) -> float | None:
        if self.greedy_len is None or self.bf_len is None or not self.bf_ok:
            return None
        return self.greedy_len / self.bf_len


@dataclass(frozen=True)
class ExperimentRow:
    size: int
    trials: int
    greedy_avg_time_s: float | None
    greedy_avg_len: float | None
    bf_successes: int
    bf_avg_time_s: float | None
    bf_avg_len: float | None
    ratio_min: float | None
    ratio_max: float | None
    ratio_avg: float | None
    avg_satisfied: float | None


def instance_seed(seed: int, size: int, trial: int) -> int:
    return (seed * 1_000_003 + size) * 1_000_003 + trial


def _mean(values):
    values = list(values)
    return sum(values) / len(values) if values else None


def run_trial(
    size: int,
    trial: int,
    seed: int,
    budget_seconds: float | None,
    n_soft: int,
    bit_prob: float,
    midpoint_variant: bool,
    run_baseline: bool = True,
) -> TrialOutcome:
    child = instance_seed(seed, size, trial)
    spec = RandomSpec(
        n_states=size,
        mean_degree=5.0,
        accepting_prob=0.2,
        n_soft=n_soft,
        bit_prob=bit_prob,
        seed=child,
    )
    product = generate_random_product(spec)
    t0 = time.perf_counter()
    lasso = minimum_cost_accepting_lasso(product, midpoint_variant)
    greedy_time = time.perf_counter() - t0
    if lasso is None:
        return TrialOutcome(size, trial, child, False, greedy_time, None, None, None, False, None)
    bf_time = None
    bf_len = None
    bf_ok = False
    if run_baseline:
        t0 = time.perf_counter()
        result = brute_force_shortest_lasso(product, budget_seconds)
        bf_time = time.perf_counter() - t0
        if result.lasso is not None and result.optimal_length:
            bf_ok = True
            bf_len = result.lasso.length
            if result.lasso.cost.value != lasso.cost.value:
                raise AssertionError(
                    f"cost mismatch on seed {child}: greedy {lasso.cost.value} "
                    f"vs exact {result.lasso.cost.value}"
                )
    return TrialOutcome(
        size,
        trial,
        child,
        True,
        greedy_time,
        lasso.length,
        bf_time,
        bf_len,
        bf_ok,
        len(lasso.satisfied),
    )


def run_experiment(
    sizes,
    trials: int,
    budget_seconds: float | None = 1200.0,
    seed: int = 0,
    n_soft: int = 10,
    bit_prob: float = 0.2,
    midpoint_variant: bool = False,
) -> tuple:
    """Run the full comparison; returns (rows, outcomes)."""
    rows = []
    outcomes = []
    for size in sizes:
        batch = [
            run_trial(size, t, seed, budget_seconds, n_soft, bit_prob, midpoint_variant)
            for t in range(trials)
        ]
        outcomes.extend(batch)
        successes = [o for o in batch if o.bf_ok]
        rows.append(
            ExperimentRow(
                size=size,
                trials=trials,
                greedy_avg_time_s=_mean(o.greedy_time_s for o in successes),
                greedy_avg_len=_mean(o.greedy_len for o in successes),
                bf_successes=len(successes),
                bf_avg_time_s=_mean(o.bf_time_s for o in successes),
                bf_avg_len=_mean(o.bf_len for o in successes),
                ratio_min=min((o.ratio for o in successes), default=None),
                ratio_max=max((o.ratio for o in successes), default=None),
                ratio_avg=_mean(o.ratio for o in successes),
                avg_satisfied=_mean(o.satisfied_count for o in successes),
            )
        )
    return rows, outcomes


_CSV_COLUMNS = [
    "size",
    "trials",
    "greedy_avg_time_s",
    "greedy_avg_len",
    "bf_successes",
    "bf_avg_time_s",
    "bf_avg_len",
    "ratio_min",
    "ratio_max",
    "ratio_avg",
    "avg_satisfied",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def rows_to_csv(rows) -> str:
    lines = ["# format=1", ",".join(_CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_cell(getattr(row, col)) for col in _CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def ratios_to_histogram_tsv(outcomes, bin_width: float = 0.25) -> str:
    """Binned approximation-ratio counts, ready for plotting."""
    ratios = [o.ratio for o in outcomes if o.ratio is not None]
    lines = ["# format=1", "ratio_bin_left\tcount"]
    if ratios:
        top = max(ratios)
        n_bins = int((top - 1.0) / bin_width) + 1
        counts = [0] * n_bins
        for r in ratios:
            idx = min(int((r - 1.0) / bin_width), n_bins - 1)
            counts[idx] += 1
        for i, count in enumerate(counts):
            lines.append(f"{1.0 + i * bin_width:.2f}\t{count}")
    return "\n".join(lines) + "\n"


def format_rows_table(rows) -> str:
    header = f"{'size':>6} {'greedy t(s)':>12} {'greedy len':>11} {'bf ok':>6} {'bf t(s)':>10} {'bf len':>8} {'r min':>6} {'r max':>6} {'r avg':>6} {'sat':>5}"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.size:>6} {_cell(r.greedy_avg_time_s):>12} {_cell(r.greedy_avg_len):>11} "
            f"{r.bf_successes:>6} {_cell(r.bf_avg_time_s):>10} {_cell(r.bf_avg_len):>8} "
            f"{_cell(r.ratio_min):>6} {_cell(r.ratio_max):>6} {_cell(r.ratio_avg):>6} "
            f"{_cell(r.avg_satisfied):>5}"
        )
    return "\n".join(lines)
