"""Seeded random-instance experiments: per-instance structure counts and
aggregated rows, written as versioned CSV.

Instance seeds derive from a Philox stream keyed by (master seed, size), so
a run is reproducible from its command line alone and instances can be
regenerated individually from their recorded seed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from numpy.random import Generator, Philox

from .budget import Budget, BudgetExceeded, DEFAULT_BUDGET
from .cycles import all_stable_cycles, reduced_stable_cycles
from .enumeration import enumerate_all_partitions, enumerate_reduced_partitions
from .instance import Instance, random_instance
from .solver import find_stable_partition

__all__ = ["InstanceStats", "AggregateRow", "instance_seeds", "collect_stats", "run_stats", "write_csv", "CSV_COLUMNS"]

HIST_LENGTHS = (1, 3, 5, 7, 9, 11)

CSV_COLUMNS = (
    "n",
    "samples",
    "solvable_rate",
    "mean_rp",
    "mean_p",
    "mean_rsc",
    "mean_sc",
    "mean_odd_len",
    "mean_odd_count",
    "mean_odd_agents",
    "hist_1",
    "hist_3",
    "hist_5",
    "hist_7",
    "hist_9",
    "hist_11",
    "budget_exceeded",
)


@dataclass(frozen=True)
class InstanceStats:
    """Structure counts of one instance; enumeration fields are None when
    the node budget ran out before they were computed."""

    n: int
    seed: int
    solvable: bool
    odd_count: int
    odd_lengths: tuple[int, ...]
    odd_agents: int
    n_rp: int | None
    n_p: int | None
    n_rsc: int | None
    n_sc: int | None
    budget_exceeded: bool


@dataclass(frozen=True)
class AggregateRow:
    n: int
    samples: int
    solvable_rate: float
    mean_rp: float
    mean_p: float
    mean_rsc: float
    mean_sc: float
    mean_odd_len: float
    mean_odd_count: float
    mean_odd_agents: float
    hist: tuple[float, ...]
    budget_exceeded: int


def instance_seeds(master_seed: int, n: int, samples: int) -> list[int]:
    """The per-instance seeds of a run, derived from (master seed, size)."""
    rng = Generator(Philox(key=[master_seed & (2**64 - 1), n]))
    return [int(s) for s in rng.integers(0, 2**64, size=samples, dtype="uint64")]


def collect_stats(inst: Instance, seed: int = 0, budget_limit: int = DEFAULT_BUDGET) -> InstanceStats:
    """Solve and enumerate one instance; enumeration respects the budget."""
    base = find_stable_partition(inst)
    odd = base.odd_cycles()
    lengths = tuple(sorted(len(c) for c in odd))
    n_rp = n_p = n_rsc = n_sc = None
    exceeded = False
    budget = Budget(budget_limit)
    try:
        n_rp = len(enumerate_reduced_partitions(inst, budget=budget))
        n_p = len(enumerate_all_partitions(inst, budget=budget))
        n_rsc = len(reduced_stable_cycles(inst, budget=budget))
        n_sc = len(all_stable_cycles(inst, budget=budget))
    except BudgetExceeded:
        exceeded = True
    return InstanceStats(
        n=inst.n,
        seed=seed,
        solvable=not odd,
        odd_count=len(odd),
        odd_lengths=lengths,
        odd_agents=sum(lengths),
        n_rp=n_rp,
        n_p=n_p,
        n_rsc=n_rsc,
        n_sc=n_sc,
        budget_exceeded=exceeded,
    )


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


def aggregate(n: int, stats: list[InstanceStats]) -> AggregateRow:
    """Averages over one size; odd-cycle shape fields average over the
    unsolvable instances only, matching how they are reported."""
    unsolvable = [s for s in stats if not s.solvable]
    hist = tuple(
        _mean([s.odd_lengths.count(length) for s in stats]) for length in HIST_LENGTHS
    )
    return AggregateRow(
        n=n,
        samples=len(stats),
        solvable_rate=_mean([1.0 if s.solvable else 0.0 for s in stats]),
        mean_rp=_mean([s.n_rp for s in stats if s.n_rp is not None]),
        mean_p=_mean([s.n_p for s in stats if s.n_p is not None]),
        mean_rsc=_mean([s.n_rsc for s in stats if s.n_rsc is not None]),
        mean_sc=_mean([s.n_sc for s in stats if s.n_sc is not None]),
        mean_odd_len=_mean([s.odd_agents / s.odd_count for s in unsolvable]),
        mean_odd_count=_mean([float(s.odd_count) for s in unsolvable]),
        mean_odd_agents=_mean([float(s.odd_agents) for s in unsolvable]),
        hist=hist,
        budget_exceeded=sum(1 for s in stats if s.budget_exceeded),
    )


def run_stats(
    sizes: list[int],
    samples: int,
    seed: int,
    budget_limit: int = DEFAULT_BUDGET,
) -> list[AggregateRow]:
    """Generate, solve, and aggregate ``samples`` instances per size."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rows = []
    for n in sizes:
        per_size = [
            collect_stats(random_instance(n, s), seed=s, budget_limit=budget_limit)
            for s in instance_seeds(seed, n, samples)
        ]
        rows.append(aggregate(n, per_size))
    return rows


def write_csv(rows: list[AggregateRow]) -> str:
    """Render aggregate rows with fixed columns and formatting, so equal
    runs produce byte-identical output."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [r.n, r.samples, f"{r.solvable_rate:.6f}"]
            + [f"{v:.6f}" for v in (r.mean_rp, r.mean_p, r.mean_rsc, r.mean_sc)]
            + [f"{v:.6f}" for v in (r.mean_odd_len, r.mean_odd_count, r.mean_odd_agents)]
            + [f"{v:.6f}" for v in r.hist]
            + [r.budget_exceeded]
        )
    return buf.getvalue()
