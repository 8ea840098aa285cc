"""Profile-optimal stable partitions and the five threshold decision problems.

All solvers are exact by enumeration. Regret, first-choice count, count of
worst-rank assignments, and cost lose nothing by restricting the search to
reduced stable partitions, so those criteria scan the reduced set only;
rank-maximal and generous have no such guarantee and scan every stable
partition. The fast minimum-regret path goes through the padded instance and
a regret-bounded matching search; its result must agree with the enumeration
optimum, which stays authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budget import Budget
from .instance import Instance
from .matchings import all_stable_matchings, find_stable_matching
from .partition import (
    GREATER,
    LESS,
    Matching,
    Partition,
    Profile,
    compare_profiles,
    matching_profile,
    matching_to_partition,
    profile,
)
from .enumeration import iter_all_partitions, iter_reduced_partitions
from .transforms import construct_ip, lift

__all__ = [
    "CRITERIA",
    "ThresholdQuery",
    "BridgeReport",
    "min_regret_partition",
    "min_regret_partition_fast",
    "optimal_partition",
    "decide",
    "stable_matching_profile_bridge",
]

MIN_REGRET = "min-regret"
FIRST_CHOICE = "first-choice"
RANK_MAXIMAL = "rank-maximal"
REGRET_MIN = "regret-min"
GENEROUS = "generous"
EGALITARIAN = "egalitarian"

CRITERIA = (MIN_REGRET, FIRST_CHOICE, RANK_MAXIMAL, REGRET_MIN, GENEROUS, EGALITARIAN)

# Criteria whose optima are always attained by a reduced stable partition.
_REDUCED_SUFFICIENT = {MIN_REGRET, FIRST_CHOICE, REGRET_MIN, EGALITARIAN}


@dataclass(frozen=True)
class ThresholdQuery:
    """One of the five decision problems.

    kind "fc": at least k first choices; "rank": profile at least sigma
    lexicographically; "rm": a minimum-regret partition with at most k
    worst-rank assignments; "gen": reverse profile at most reversed sigma;
    "egal": cost at most k.
    """

    kind: str
    k: int | None = None
    sigma: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("fc", "rank", "rm", "gen", "egal"):
            raise ValueError(f"unknown query kind {self.kind!r}")
        if self.kind in ("fc", "rm", "egal") and self.k is None:
            raise ValueError(f"query {self.kind!r} needs an integer threshold")
        if self.kind in ("rank", "gen") and self.sigma is None:
            raise ValueError(f"query {self.kind!r} needs a profile vector")


def _candidates(inst: Instance, reduced: bool, budget: Budget | None):
    it = iter_reduced_partitions(inst, budget=budget) if reduced else iter_all_partitions(inst, budget=budget)
    for p in it:
        yield p, profile(inst, p)


def min_regret_partition(inst: Instance, budget: Budget | None = None) -> Partition:
    """A reduced stable partition whose regret is minimal over all stable
    partitions (breaking even cycles never increases regret)."""
    return optimal_partition(inst, MIN_REGRET, budget=budget)


def min_regret_partition_fast(inst: Instance) -> Partition:
    """Minimum-regret partition via the padded instance.

    Finds the smallest rank bound whose truncation of the padded instance
    still admits a matching covering everyone, then lifts that matching.
    Exposed as a cross-checkable fast path; enumeration stays authoritative.
    """
    if not inst.complete:
        raise ValueError("optimality requires a complete instance")
    ip = construct_ip(inst)
    padded = ip.derived
    ranks = sorted(
        {padded.rank(a, b) for a in padded.agents for b in padded.prefs[a]}
    )
    best: Matching | None = None
    lo, hi = 0, len(ranks) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        m = _perfect_matching_within(padded, ranks[mid])
        if m is not None:
            best = m
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        raise RuntimeError("padded instance admits no perfect stable matching")
    return lift(ip, best)


def _perfect_matching_within(inst: Instance, bound: int) -> Matching | None:
    """A stable matching of ``inst`` using only ranks <= bound and covering
    every agent, if one exists.

    A perfect matching within the truncation is stable in the full instance
    iff it is stable in the truncation, so truncating and solving decides
    the bound.
    """
    prefs = {a: tuple(b for b in inst.prefs[a] if inst.rank(a, b) <= bound) for a in inst.agents}
    mutual = {
        a: tuple(b for b in lst if a in prefs[b]) for a, lst in prefs.items()
    }
    m = find_stable_matching(Instance(mutual, _validate=False))
    if m is None or m.agent_set != set(inst.agents):
        return None
    return m


def optimal_partition(inst: Instance, criterion: str, budget: Budget | None = None) -> Partition:
    """The optimal stable partition under one of the six criteria.

    Ties break toward the canonically smallest partition, so the result is
    deterministic.
    """
    if not inst.complete:
        raise ValueError("optimality requires a complete instance")
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; pick from {CRITERIA}")
    reduced = criterion in _REDUCED_SUFFICIENT
    best: tuple | None = None
    best_part: Partition | None = None
    for p, prof in _candidates(inst, reduced, budget):
        key = _score(criterion, prof)
        if best is None or key < best or (key == best and p < best_part):
            best, best_part = key, p
    assert best_part is not None
    return best_part


def _score(criterion: str, prof: Profile) -> tuple:
    """Sort key; smaller is better under every criterion."""
    if criterion == MIN_REGRET:
        return (prof.regret,)
    if criterion == FIRST_CHOICE:
        return (-prof.combined[0],)
    if criterion == RANK_MAXIMAL:
        return (tuple(-v for v in prof.combined),)
    if criterion == REGRET_MIN:
        worst = prof.combined[prof.regret - 1] if prof.regret else 0
        return (prof.regret, worst)
    if criterion == GENEROUS:
        return (tuple(reversed(prof.combined)),)
    return (prof.cost,)


def decide(
    inst: Instance, query: ThresholdQuery, budget: Budget | None = None
) -> tuple[bool, Partition | None]:
    """Answer a threshold query; a yes comes with a witness partition."""
    if not inst.complete:
        raise ValueError("decision problems require a complete instance")
    n = inst.n
    if query.sigma is not None and len(query.sigma) != n:
        raise ValueError(f"sigma has length {len(query.sigma)}, expected {n}")

    if query.kind == "rm":
        best = optimal_partition(inst, REGRET_MIN, budget=budget)
        prof = profile(inst, best)
        worst = prof.combined[prof.regret - 1] if prof.regret else 0
        return (True, best) if worst <= query.k else (False, None)

    reduced = query.kind in ("fc", "egal")
    for p, prof in _candidates(inst, reduced, budget):
        if query.kind == "fc" and prof.combined[0] >= query.k:
            return True, p
        if query.kind == "egal" and prof.cost <= query.k:
            return True, p
        if query.kind == "rank" and compare_profiles(prof.combined, query.sigma) != LESS:
            return True, p
        if query.kind == "gen" and compare_profiles(query.sigma, prof.combined, "reverse") != LESS:
            return True, p
    return False, None


@dataclass(frozen=True)
class BridgeReport:
    """Both sides of the partition/matching profile identities on a solvable
    instance; construction fails if any identity is violated."""

    max_first_choices_partitions: int
    max_first_choices_matchings: int
    min_cost_partitions: Fraction
    min_cost_matchings: Fraction
    min_regret_partitions: int
    min_regret_matchings: int


def stable_matching_profile_bridge(inst: Instance, budget: Budget | None = None) -> BridgeReport:
    """Check the profile identities tying matchings to partitions.

    On a solvable instance: every stable matching's induced partition has
    exactly the doubled matching profile; the best first-choice count over
    partitions doubles the matching one; minimum cost and minimum regret
    agree on both sides.
    """
    matchings = all_stable_matchings(inst, budget=budget)
    if not matchings:
        raise ValueError("profile bridge requires a solvable instance")
    m_first = m_cost = m_regret = None
    for m in matchings:
        mp = matching_profile(inst, m)
        pp = profile(inst, matching_to_partition(m))
        if pp.combined != tuple(2 * v for v in mp.combined):
            raise RuntimeError(f"doubling identity fails for {m}")
        if pp.cost != mp.cost:
            raise RuntimeError(f"cost identity fails for {m}")
        m_first = mp.combined[0] if m_first is None else max(m_first, mp.combined[0])
        m_cost = mp.cost if m_cost is None else min(m_cost, mp.cost)
        m_regret = mp.regret if m_regret is None else min(m_regret, mp.regret)
    p_first = None
    p_cost = None
    p_regret = None
    for p in iter_all_partitions(inst, budget=budget):
        prof = profile(inst, p)
        p_first = prof.combined[0] if p_first is None else max(p_first, prof.combined[0])
        p_cost = prof.cost if p_cost is None else min(p_cost, prof.cost)
        p_regret = prof.regret if p_regret is None else min(p_regret, prof.regret)
    report = BridgeReport(p_first, 2 * m_first, p_cost, m_cost, p_regret, m_regret)
    if p_first != 2 * m_first:
        raise RuntimeError(f"first-choice bridge fails: {report}")
    if p_cost != m_cost:
        raise RuntimeError(f"cost bridge fails: {report}")
    if p_regret != m_regret:
        raise RuntimeError(f"regret bridge fails: {report}")
    return report
