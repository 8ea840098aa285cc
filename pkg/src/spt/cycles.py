"""Stable-cycle machinery: completion, verification, and the three cycle sets.

Even cycles are recovered through the reduced partitions: every non-reduced
stable partition is the merge of two reduced ones, so merging all pairs of
reduced partitions surfaces every even cycle. A predecessor-successor pair
determines at most one even stable cycle, which makes completion a lookup.
Fixed and reduced stable cycles come from pair computations on the truncated
sub-instance.
"""

from __future__ import annotations

from .budget import Budget
from .instance import Instance
from .matchings import fixed_pairs, iter_stable_matchings, stable_pairs
from .partition import Cycle, Partition
from .solver import find_stable_partition
from .transforms import construct_it, lift

__all__ = [
    "complete_even_cycle",
    "verify_cycle",
    "fixed_cycles",
    "reduced_stable_cycles",
    "all_stable_cycles",
]


def _merged_partitions(inst: Instance, budget: Budget | None) -> frozenset[Partition]:
    from .enumeration import enumerate_all_partitions_naive

    return enumerate_all_partitions_naive(inst, budget=budget)


def complete_even_cycle(
    inst: Instance, a1: int, a2: int, budget: Budget | None = None
) -> Cycle | None:
    """The unique even stable cycle in which a2 succeeds a1, or None.

    Any consecutive pair pins down the whole cycle, so two even stable
    cycles can never share a predecessor-successor pair; a violation of that
    uniqueness raises rather than returning an arbitrary pick.
    """
    if not inst.complete:
        raise ValueError("cycle completion requires a complete instance")
    if a1 == a2:
        raise ValueError("need two distinct agents")
    found = [
        c
        for p in _merged_partitions(inst, budget)
        for c in p.cycles
        if len(c) > 2 and len(c) % 2 == 0 and a1 in c and c.successor(a1) == a2
    ]
    unique = set(found)
    if len(unique) > 1:
        raise RuntimeError(
            f"pair ({a1} {a2}) begins several even stable cycles: {sorted(unique)}"
        )
    return found[0] if found else None


def verify_cycle(
    inst: Instance, c: Cycle, budget: Budget | None = None
) -> Partition | None:
    """A stable partition containing c, or None if c is not a stable cycle.

    Odd candidates must equal an invariant odd cycle verbatim; pairs must be
    stable transpositions; longer even candidates must appear among the
    merges of reduced partitions with the same agent order.
    """
    if not inst.complete:
        raise ValueError("cycle verification requires a complete instance")
    if len(c) % 2 == 1:
        base = find_stable_partition(inst)
        return base if c in base.cycles else None
    if len(c) == 2:
        it = construct_it(inst)
        pair = tuple(sorted(c.agents))
        for m in iter_stable_matchings(it.derived, budget=budget):
            if pair in m:
                return lift(it, m)
        return None
    for p in sorted(_merged_partitions(inst, budget)):
        if c in p.cycles:
            return p
    return None


def fixed_cycles(inst: Instance, budget: Budget | None = None) -> frozenset[Cycle]:
    """Cycles present in every stable partition: the odd cycles plus the
    fixed pairs of the truncated sub-instance."""
    it = construct_it(inst)
    pairs = fixed_pairs(it.derived, budget=budget)
    return frozenset(it.odd_cycles) | {Cycle(p) for p in pairs}


def reduced_stable_cycles(inst: Instance, budget: Budget | None = None) -> frozenset[Cycle]:
    """Odd cycles plus all stable transpositions."""
    it = construct_it(inst)
    pairs = stable_pairs(it.derived, budget=budget)
    return frozenset(it.odd_cycles) | {Cycle(p) for p in pairs}


def all_stable_cycles(inst: Instance, budget: Budget | None = None) -> frozenset[Cycle]:
    """Every cycle of every stable partition: the reduced stable cycles
    plus the even cycles surfaced by merging reduced partitions."""
    evens = {
        c
        for p in _merged_partitions(inst, budget)
        for c in p.cycles
        if len(c) > 2 and len(c) % 2 == 0
    }
    return reduced_stable_cycles(inst, budget=budget) | evens
