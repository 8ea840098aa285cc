"""Stable matchings: find one, enumerate all, stable and fixed pairs.

A stable matching exists iff no stable partition of the instance has an odd
cycle longer than one agent; the agents in 1-cycles are exactly the agents
left unassigned by every stable matching. Enumeration branches on a pair of
one known stable matching: the matchings avoiding the pair survive deleting
it, the ones containing it survive removing both agents, and candidates from
either branch are kept only if they verify in the parent instance.
"""

from __future__ import annotations

from typing import Iterator

from .budget import Budget
from .instance import Instance
from .partition import Matching, verify_matching
from .solver import find_stable_partition

__all__ = [
    "find_stable_matching",
    "all_stable_matchings",
    "iter_stable_matchings",
    "stable_pairs",
    "fixed_pairs",
    "brute_force_matchings",
]


def find_stable_matching(inst: Instance) -> Matching | None:
    """Some stable matching, or None if the instance is unsolvable."""
    part = find_stable_partition(inst)
    pairs = []
    for c in part.cycles:
        if len(c) == 2:
            pairs.append(c.agents)
        elif len(c) > 1:
            return None
    return Matching(pairs)


def _delete_pair(inst: Instance, i: int, j: int) -> Instance:
    prefs = dict(inst.prefs)
    prefs[i] = tuple(b for b in prefs[i] if b != j)
    prefs[j] = tuple(b for b in prefs[j] if b != i)
    return Instance(prefs, _validate=False)


_CACHE: dict[Instance, frozenset[Matching]] = {}
_CACHE_LIMIT = 50_000


def _all_sm(sub: Instance, budget: Budget | None) -> frozenset[Matching]:
    cached = _CACHE.get(sub)
    if cached is not None:
        return cached
    if budget is not None:
        budget.charge()
    m0 = find_stable_matching(sub)
    if m0 is None:
        result: frozenset[Matching] = frozenset()
    elif not m0.pairs:
        result = frozenset((m0,))
    else:
        i, j = m0.pairs[0]
        out = {m0}
        for cand in _all_sm(_delete_pair(sub, i, j), budget):
            if not verify_matching(sub, cand):
                out.add(cand)
        for cand in _all_sm(sub.restrict(set(sub.agents) - {i, j}), budget):
            extended = Matching(cand.pairs + ((i, j),))
            if not verify_matching(sub, extended):
                out.add(extended)
        result = frozenset(out)
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[sub] = result
    return result


def iter_stable_matchings(inst: Instance, budget: Budget | None = None) -> Iterator[Matching]:
    """Yield every stable matching exactly once, smallest first."""
    yield from sorted(_all_sm(inst, budget))


def all_stable_matchings(inst: Instance, budget: Budget | None = None) -> frozenset[Matching]:
    """The set of all stable matchings; empty iff unsolvable.

    Splits on one pair {i, j} of a known stable matching: candidates without
    the pair come from the instance with that pair deleted, candidates with
    it from the instance with both agents removed, and either kind is kept
    only if it has no blocking pair here. Results are cached per instance,
    which collapses the overlap between the two branches.
    """
    import sys

    limit = max(sys.getrecursionlimit(), 4 * inst.n * inst.n + 1000)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(limit)
    try:
        return _all_sm(inst, budget)
    finally:
        sys.setrecursionlimit(old)


def stable_pairs(inst: Instance, budget: Budget | None = None) -> frozenset[tuple[int, int]]:
    """Pairs contained in at least one stable matching."""
    return frozenset(p for m in all_stable_matchings(inst, budget=budget) for p in m.pairs)


def fixed_pairs(inst: Instance, budget: Budget | None = None) -> frozenset[tuple[int, int]]:
    """Pairs contained in every stable matching; empty if unsolvable."""
    matchings = all_stable_matchings(inst, budget=budget)
    if not matchings:
        return frozenset()
    common: set[tuple[int, int]] | None = None
    for m in matchings:
        common = set(m.pairs) if common is None else common & set(m.pairs)
    return frozenset(common or ())


def brute_force_matchings(inst: Instance, bound: int = 12) -> frozenset[Matching]:
    """Ground-truth stable matchings by exhaustive search.

    Enumerates matchings that leave no two mutually acceptable agents both
    unassigned (stable matchings are maximal in this sense) and keeps the
    ones with no blocking pair.
    """
    if inst.n > bound:
        raise ValueError(f"brute force limited to {bound} agents, got {inst.n}")
    agents = inst.agents
    out = []

    def rec(pos: int, used: set[int], skipped: list[int], pairs: list[tuple[int, int]]):
        while pos < len(agents) and agents[pos] in used:
            pos += 1
        if pos == len(agents):
            m = Matching(pairs)
            if not verify_matching(inst, m):
                out.append(m)
            return
        a = agents[pos]
        for b in inst.prefs[a]:
            if b > a and b not in used:
                pairs.append((a, b))
                used.add(a)
                used.add(b)
                rec(pos + 1, used, skipped, pairs)
                used.discard(a)
                used.discard(b)
                pairs.pop()
        if all(not inst.acceptable(a, s) for s in skipped):
            skipped.append(a)
            used.add(a)
            rec(pos + 1, used, skipped, pairs)
            used.discard(a)
            skipped.pop()

    rec(0, set(), [], [])
    return frozenset(out)
