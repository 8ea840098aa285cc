"""Enumerating stable partitions: reduced, all, naive cross-check, and oracle.

Reduced stable partitions are the lifts of the truncated sub-instance's
stable matchings. All stable partitions come from a recursion that starts
with the invariant odd cycles and commits one more stable cycle per level,
always through the smallest uncovered agent: when the helper detects a
forced pair it is committed directly, otherwise every precomputed stable
cycle through the agent that keeps the prefix extendable opens a branch.
Each emitted partition is verified; no partition is emitted twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .budget import Budget
from .instance import Instance
from .matchings import find_stable_matching, iter_stable_matchings
from .partition import Cycle, Partition, merge, verify_partition
from .solver import find_stable_partition
from .transforms import construct_it, lift

__all__ = [
    "PartialPartition",
    "enumerate_reduced_partitions",
    "iter_reduced_partitions",
    "fc_helper",
    "extension_feasible",
    "enumerate_all_partitions",
    "iter_all_partitions",
    "enumerate_all_partitions_naive",
    "brute_force_partitions",
]


@dataclass(frozen=True)
class PartialPartition:
    """A prefix of some stable partition: committed cycles (always including
    every odd cycle) and the agents not yet covered."""

    committed: tuple[Cycle, ...]
    remaining: frozenset[int]


def iter_reduced_partitions(inst: Instance, budget: Budget | None = None) -> Iterator[Partition]:
    """Yield every reduced stable partition exactly once."""
    it = construct_it(inst)
    for m in iter_stable_matchings(it.derived, budget=budget):
        part = lift(it, m)
        bad = verify_partition(inst, part)
        if bad is not None:
            raise RuntimeError(f"lifted reduced partition fails verification: {bad}")
        yield part


def enumerate_reduced_partitions(inst: Instance, budget: Budget | None = None) -> frozenset[Partition]:
    return frozenset(iter_reduced_partitions(inst, budget=budget))


def _residual_instance(inst: Instance, committed: tuple[Cycle, ...]) -> Instance:
    """The uncovered agents with lists truncated so that a perfect stable
    matching of the result extends ``committed`` to a stable partition.

    For every committed agent and every agent it prefers over its cycle
    predecessor, that agent's list is cut at the committed agent: the
    committed agent itself and everything it ranks worse are dropped.
    """
    taken = {a for c in committed for a in c}
    cutoff: dict[int, int] = {}
    for c in committed:
        for a in c:
            pred_rank = inst._key(a, c.predecessor(a))
            for p in inst.prefs[a]:
                if inst._key(a, p) >= pred_rank:
                    break
                if p in taken:
                    continue
                r = inst.rank(p, a)
                if r is not None and r < cutoff.get(p, 1 << 32):
                    cutoff[p] = r
    remaining = [a for a in inst.agents if a not in taken]
    keep: dict[int, set[int]] = {}
    for a in remaining:
        limit = cutoff.get(a, 1 << 32)
        keep[a] = {b for b in inst.prefs[a] if b not in taken and inst.rank(a, b) < limit}
    prefs = {
        a: tuple(b for b in inst.prefs[a] if b in keep[a] and a in keep[b])
        for a in remaining
    }
    return Instance(prefs, _validate=False)


def fc_helper(inst: Instance, pp: PartialPartition, agent: int) -> tuple[int, int] | None:
    """The unique pair through ``agent`` forced by the committed cycles, if any.

    Builds the truncated residual instance and reports the fixed pair of its
    stable matchings that contains ``agent``; None when the agent's partner
    varies between stable matchings (or the residual is unsolvable).
    """
    if agent not in pp.remaining:
        raise ValueError(f"agent {agent} is already covered")
    residual = _residual_instance(inst, pp.committed)
    first = find_stable_matching(residual)
    if first is None:
        return None
    partner = first.partner(agent)
    if partner is None:
        return None
    for m in iter_stable_matchings(residual):
        if m.partner(agent) != partner:
            return None
    return (agent, partner) if agent < partner else (partner, agent)


def extension_feasible(inst: Instance, committed: tuple[Cycle, ...]) -> bool:
    """True iff the committed cycles are a prefix of some stable partition.

    Requires the cycles to be internally T1-consistent, free of blocking
    pairs among the covered agents, and the truncated residual instance to
    admit a perfect stable matching.
    """
    for c in committed:
        for a in c:
            s, q = c.successor(a), c.predecessor(a)
            if s != q and not inst.prefers(a, s, q):
                return False
    pred = {}
    for c in committed:
        for a in c:
            pred[a] = c.predecessor(a)
    taken = sorted(pred)
    for x, i in enumerate(taken):
        for j in taken[x + 1 :]:
            if inst.prefers(i, j, pred[i]) and inst.prefers(j, i, pred[j]):
                return False
    residual = _residual_instance(inst, committed)
    part = find_stable_partition(residual)
    return all(len(c) == 2 for c in part.cycles)


def iter_all_partitions(inst: Instance, budget: Budget | None = None) -> Iterator[Partition]:
    """Yield every stable partition exactly once, depth-first.

    The invariant odd cycles seed the recursion; the set of all stable
    cycles is computed once up front and filtered down each branch.
    """
    from .cycles import all_stable_cycles

    base = find_stable_partition(inst)
    odd = base.odd_cycles()
    pool = sorted(c for c in all_stable_cycles(inst, budget=budget) if len(c) % 2 == 0)
    remaining = sorted(a for a in inst.agents if all(a not in c for c in odd))

    def rec(committed: tuple[Cycle, ...], remaining: list[int], pool: list[Cycle]) -> Iterator[Partition]:
        if budget is not None:
            budget.charge()
        if not remaining:
            part = Partition(committed)
            bad = verify_partition(inst, part)
            if bad is not None:
                raise RuntimeError(f"enumeration emitted an unstable partition: {bad}")
            yield part
            return
        agent = remaining[0]
        forced = fc_helper(inst, PartialPartition(committed, frozenset(remaining)), agent)
        if forced is not None:
            candidates = [Cycle(forced)]
        else:
            candidates = [c for c in pool if agent in c]
        for c in candidates:
            extended = committed + (c,)
            if forced is None and not extension_feasible(inst, extended):
                continue
            inside = set(c.agents)
            yield from rec(
                extended,
                [a for a in remaining if a not in inside],
                [k for k in pool if inside.isdisjoint(k.agents)],
            )

    yield from rec(tuple(odd), remaining, pool)


def enumerate_all_partitions(inst: Instance, budget: Budget | None = None) -> frozenset[Partition]:
    return frozenset(iter_all_partitions(inst, budget=budget))


def enumerate_all_partitions_naive(inst: Instance, budget: Budget | None = None) -> frozenset[Partition]:
    """All stable partitions via pairwise merging of the reduced ones.

    Every non-reduced stable partition arises from merging two reduced ones,
    so this reproduces the recursive enumeration and serves as a cross-check.
    """
    reduced = sorted(enumerate_reduced_partitions(inst, budget=budget))
    out: set[Partition] = set(reduced)
    for x in range(len(reduced)):
        for y in range(x + 1, len(reduced)):
            if budget is not None:
                budget.charge()
            merged = merge(inst, reduced[x], reduced[y])
            if isinstance(merged, Partition):
                out.add(merged)
    return frozenset(out)


def brute_force_partitions(inst: Instance, bound: int = 10) -> frozenset[Partition]:
    """Ground-truth stable partitions by exhaustive cycle-cover search.

    Builds cycles starting from the smallest uncovered agent. A successor
    choice worse than the chooser's predecessor is never explored, and a
    pair preferring each other over their predecessors prunes the branch as
    soon as both predecessors are decided, so surviving covers are stable up
    to the final (redundant, kept as a safety net) verification.
    """
    if inst.n > bound:
        raise ValueError(f"brute force limited to {bound} agents, got {inst.n}")
    agents = inst.agents
    key = inst._key
    out = []
    pred: dict[int, int] = {}

    def blocks_with_decided(x: int) -> bool:
        px = key(x, pred[x])
        for z, pz in pred.items():
            if z == x:
                continue
            if key(x, z) < px and key(z, x) < key(z, pz):
                return True
        return False

    def extend(cycles: list[Cycle], covered: set[int]) -> None:
        if len(covered) == inst.n:
            p = Partition(cycles)
            if verify_partition(inst, p) is not None:
                raise RuntimeError(f"pruning admitted an unstable cover: {p}")
            out.append(p)
            return
        start = min(a for a in agents if a not in covered)

        def close(path: list[int]) -> None:
            s, q = path[1] if len(path) > 1 else path[0], path[-1]
            if len(path) > 1 and s != q and not inst.prefers(path[0], s, q):
                return
            if len(path) > 2 and not inst.prefers(q, path[0], path[-2]):
                return
            pred[path[0]] = q
            if not blocks_with_decided(path[0]):
                cycles.append(Cycle(path))
                extend(cycles, covered | set(path))
                cycles.pop()
            del pred[path[0]]

        def grow(path: list[int]) -> None:
            close(path)
            last = path[-1]
            prev = path[-2] if len(path) >= 2 else None
            stop = key(last, prev) if prev is not None else None
            for nxt in inst.prefs[last]:
                if stop is not None and key(last, nxt) >= stop:
                    break
                if nxt in covered or nxt in path:
                    continue
                pred[nxt] = last
                if not blocks_with_decided(nxt):
                    path.append(nxt)
                    grow(path)
                    path.pop()
                del pred[nxt]

        grow([start])

    extend([], set())
    return frozenset(out)
