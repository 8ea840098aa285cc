"""Cycles, partitions, matchings, stability verification, and profiles.

A partition is a permutation of the agents written as disjoint cycles; it is
stable when every agent weakly prefers its successor over its predecessor
(T1) and no two agents strictly prefer each other over their predecessors
(T2). All types here are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .instance import Instance

__all__ = [
    "Cycle",
    "Partition",
    "Matching",
    "CycleDecomposition",
    "Profile",
    "Violation",
    "NOT_PERMUTATION",
    "T1",
    "T2",
    "LESS",
    "EQUAL",
    "GREATER",
    "parse_partition",
    "verify_partition",
    "verify_matching",
    "decompose",
    "break_even_cycle",
    "reduce_partition",
    "merge",
    "profile",
    "matching_profile",
    "compare_profiles",
    "matching_to_partition",
    "partition_to_matching",
]


class Cycle:
    """Ordered agents; stored in canonical rotation (minimum agent first)."""

    __slots__ = ("agents",)

    def __init__(self, agents: Sequence[int]):
        agents = tuple(agents)
        if not agents:
            raise ValueError("a cycle holds at least one agent")
        if len(set(agents)) != len(agents):
            raise ValueError(f"duplicate agent in cycle {agents}")
        pivot = agents.index(min(agents))
        self.agents: tuple[int, ...] = agents[pivot:] + agents[:pivot]

    def __len__(self) -> int:
        return len(self.agents)

    def __iter__(self):
        return iter(self.agents)

    def __contains__(self, a: int) -> bool:
        return a in self.agents

    def successor(self, a: int) -> int:
        i = self.agents.index(a)
        return self.agents[(i + 1) % len(self.agents)]

    def predecessor(self, a: int) -> int:
        i = self.agents.index(a)
        return self.agents[i - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.agents == other.agents

    def __hash__(self) -> int:
        return hash(self.agents)

    def __lt__(self, other: "Cycle") -> bool:
        return self.agents < other.agents

    def __str__(self) -> str:
        return "(" + " ".join(str(a) for a in self.agents) + ")"

    def __repr__(self) -> str:
        return f"Cycle{self.agents}"


class Partition:
    """Disjoint cycles; canonical order sorts cycles by their minimum agent."""

    __slots__ = ("cycles", "_succ", "_pred")

    def __init__(self, cycles: Iterable[Cycle]):
        self.cycles: tuple[Cycle, ...] = tuple(sorted(cycles, key=lambda c: c.agents))
        self._succ: dict[int, int] = {}
        self._pred: dict[int, int] = {}
        for c in self.cycles:
            ags = c.agents
            for i, a in enumerate(ags):
                if a in self._succ:
                    raise ValueError(f"agent {a} appears in two cycles")
                self._succ[a] = ags[(i + 1) % len(ags)]
                self._pred[a] = ags[i - 1]

    @property
    def agent_set(self) -> frozenset[int]:
        return frozenset(self._succ)

    def successor(self, a: int) -> int:
        return self._succ[a]

    def predecessor(self, a: int) -> int:
        return self._pred[a]

    @property
    def is_reduced(self) -> bool:
        """No cycle of even length greater than two."""
        return all(len(c) % 2 == 1 or len(c) == 2 for c in self.cycles)

    def odd_cycles(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if len(c) % 2 == 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.cycles == other.cycles

    def __hash__(self) -> int:
        return hash(self.cycles)

    def __lt__(self, other: "Partition") -> bool:
        return tuple(c.agents for c in self.cycles) < tuple(c.agents for c in other.cycles)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.cycles)

    def __repr__(self) -> str:
        return f"Partition[{self}]"


class Matching:
    """Disjoint unordered pairs of agents."""

    __slots__ = ("pairs", "_partner")

    def __init__(self, pairs: Iterable[tuple[int, int] | frozenset[int]]):
        normalized = []
        for p in pairs:
            i, j = sorted(p)
            if i == j:
                raise ValueError(f"agent {i} paired with itself")
            normalized.append((i, j))
        self.pairs: tuple[tuple[int, int], ...] = tuple(sorted(normalized))
        self._partner: dict[int, int] = {}
        for i, j in self.pairs:
            if i in self._partner or j in self._partner:
                raise ValueError(f"overlapping pairs at {{{i}, {j}}}")
            self._partner[i] = j
            self._partner[j] = i

    def partner(self, a: int) -> int | None:
        return self._partner.get(a)

    @property
    def agent_set(self) -> frozenset[int]:
        return frozenset(self._partner)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        i, j = sorted(pair)
        return self._partner.get(i) == j

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __lt__(self, other: "Matching") -> bool:
        return self.pairs < other.pairs

    def __str__(self) -> str:
        return " ".join(f"{i}-{j}" for i, j in self.pairs)

    def __repr__(self) -> str:
        return f"Matching[{self}]"


NOT_PERMUTATION = "not-permutation"
T1 = "T1"
T2 = "T2"


@dataclass(frozen=True)
class Violation:
    """Why a candidate partition is not stable, with its witness agents."""

    kind: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{self.witness}"


@dataclass(frozen=True)
class CycleDecomposition:
    transpositions: tuple[Cycle, ...]
    evens: tuple[Cycle, ...]
    odds: tuple[Cycle, ...]
    n1: int
    n2: int


@dataclass(frozen=True)
class Profile:
    """Rank counts of a partition's half-assignments.

    ``combined[i-1]`` counts successor plus predecessor assignments of rank
    i. A self-assigned agent contributes rank (own list length + 1) to both
    vectors but is excluded from the cost sum. The cost carries the exact
    one-half factor as a Fraction.
    """

    successor: tuple[int, ...]
    predecessor: tuple[int, ...]
    combined: tuple[int, ...]
    regret: int
    cost: Fraction


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_partition(text: str) -> Partition:
    """Parse cycle notation like ``(1 2 3)(4 5 6)``; whitespace is free-form."""
    stripped = re.sub(r"\s", "", text)
    rebuilt = "".join(m.group(0) for m in _CYCLE_RE.finditer(text))
    if re.sub(r"\s", "", rebuilt) != stripped or not stripped:
        raise ValueError(f"cannot parse partition from {text!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        toks = m.group(1).split()
        if not toks:
            raise ValueError("empty cycle in partition text")
        cycles.append(Cycle(int(t) for t in toks))
    return Partition(cycles)


def verify_partition(inst: Instance, p: Partition) -> Violation | None:
    """None iff p is a stable partition of inst; else the first violation.

    Scans agents in ascending order for T1 and pairs in lexicographic order
    for T2, so the returned witness is deterministic.
    """
    covered = p.agent_set
    members = set(inst.agents)
    if covered != members:
        return Violation(NOT_PERMUTATION, tuple(sorted(covered ^ members)))
    for a in inst.agents:
        s, q = p.successor(a), p.predecessor(a)
        if s != q and not inst.prefers(a, s, q):
            return Violation(T1, (a,))
    agents = inst.agents
    for x, i in enumerate(agents):
        pi = p.predecessor(i)
        for j in agents[x + 1 :]:
            if inst.prefers(i, j, pi) and inst.prefers(j, i, p.predecessor(j)):
                return Violation(T2, (i, j))
    return None


def verify_matching(inst: Instance, m: Matching) -> frozenset[tuple[int, int]]:
    """The set of blocking pairs of m; empty means stable.

    An unassigned agent blocks with any mutually acceptable agent that is
    also unassigned or prefers it over its partner. Raises ValueError for
    structurally invalid input (unknown agents, unacceptable pairs).
    """
    members = set(inst.agents)
    for i, j in m.pairs:
        if i not in members or j not in members:
            raise ValueError(f"pair {{{i}, {j}}} references unknown agents")
        if not inst.acceptable(i, j):
            raise ValueError(f"pair {{{i}, {j}}} is not mutually acceptable")
    blocking = []
    agents = inst.agents
    for x, i in enumerate(agents):
        mi = m.partner(i)
        for j in agents[x + 1 :]:
            if not inst.acceptable(i, j) or mi == j:
                continue
            if mi is not None and not inst.prefers(i, j, mi):
                continue
            mj = m.partner(j)
            if mj is not None and not inst.prefers(j, i, mj):
                continue
            blocking.append((i, j))
    return frozenset(blocking)


def decompose(p: Partition) -> CycleDecomposition:
    """Split into transpositions, longer even cycles, and odd cycles."""
    ts = tuple(c for c in p.cycles if len(c) == 2)
    evens = tuple(c for c in p.cycles if len(c) % 2 == 0 and len(c) > 2)
    odds = tuple(c for c in p.cycles if len(c) % 2 == 1)
    n1 = sum(len(c) for c in ts) + sum(len(c) for c in evens)
    n2 = sum(len(c) for c in odds)
    return CycleDecomposition(ts, evens, odds, n1, n2)


def break_even_cycle(c: Cycle) -> tuple[tuple[Cycle, ...], tuple[Cycle, ...]]:
    """The two transposition collections an even cycle breaks into.

    For (a1 a2 ... a2k): the first pairs consecutive agents starting at a1,
    the second pairs a1 with a2k and then consecutive agents from a2.
    """
    k = len(c)
    if k < 4 or k % 2 != 0:
        raise ValueError(f"need an even cycle of length >= 4, got length {k}")
    ags = c.agents
    first = tuple(Cycle((ags[i], ags[i + 1])) for i in range(0, k, 2))
    second = (Cycle((ags[0], ags[-1])),) + tuple(
        Cycle((ags[i], ags[i + 1])) for i in range(1, k - 2, 2)
    )
    return first, second


def reduce_partition(p: Partition) -> tuple[Partition, Partition]:
    """Break every even cycle one way in the first output, the other way in
    the second. Stability is preserved for stable input; a reduced input
    comes back unchanged as an identical pair."""
    dec = decompose(p)
    kept = dec.transpositions + dec.odds
    a_cycles = list(kept)
    b_cycles = list(kept)
    for c in dec.evens:
        one, two = break_even_cycle(c)
        a_cycles.extend(one)
        b_cycles.extend(two)
    return Partition(a_cycles), Partition(b_cycles)


def merge(inst: Instance, pa: Partition, pb: Partition) -> Partition | Violation:
    """Recombine two reduced stable partitions into one partition.

    Cycles common to both are kept; agents whose transpositions differ are
    joined into even cycles by alternating partners, oriented so that each
    agent's successor is its preferred partner. Returns the merged partition
    only if it verifies stable, otherwise the violation found.
    """
    if not pa.is_reduced or not pb.is_reduced:
        raise ValueError("merge requires reduced partitions")
    if pa.agent_set != pb.agent_set:
        raise ValueError("partitions cover different agent sets")
    common = set(pa.cycles) & set(pb.cycles)
    diff = sorted(
        a
        for c in (set(pa.cycles) ^ set(pb.cycles))
        for a in c.agents
    )
    for a in diff:
        in_pair_a = pa.successor(a) == pa.predecessor(a) != a
        in_pair_b = pb.successor(a) == pb.predecessor(a) != a
        if not (in_pair_a and in_pair_b):
            raise ValueError(f"agent {a} is not in a transposition on both sides")
    cycles = list(common)
    seen: set[int] = set()
    for start in diff:
        if start in seen:
            continue
        first_a, first_b = pa.successor(start), pb.successor(start)
        nxt = first_a if inst.prefers(start, first_a, first_b) else first_b
        use_a = nxt != first_a
        walk = [start]
        seen.add(start)
        cur = nxt
        while cur != start:
            walk.append(cur)
            seen.add(cur)
            cur = pa.successor(cur) if use_a else pb.successor(cur)
            use_a = not use_a
        cycles.append(Cycle(walk))
    merged = Partition(cycles)
    bad = verify_partition(inst, merged)
    if bad is not None:
        return bad
    return merged


def profile(inst: Instance, p: Partition) -> Profile:
    """Successor/predecessor/combined rank counts plus regret and cost."""
    if p.agent_set != set(inst.agents):
        raise ValueError("partition does not cover the instance's agents")
    n = inst.n
    succ = [0] * n
    pred = [0] * n
    total = 0
    for a in inst.agents:
        for vec, other in ((succ, p.successor(a)), (pred, p.predecessor(a))):
            if other == a:
                slot = len(inst.prefs[a]) + 1
            else:
                slot = inst.rank(a, other)
                total += slot
            vec[slot - 1] += 1
    combined = tuple(s + q for s, q in zip(succ, pred))
    regret = max((i + 1 for i, v in enumerate(combined) if v), default=0)
    return Profile(tuple(succ), tuple(pred), combined, regret, Fraction(total, 2))


def matching_profile(inst: Instance, m: Matching) -> Profile:
    """Rank counts of a matching; unmatched agents contribute nothing."""
    n = inst.n
    counts = [0] * n
    total = 0
    for i, j in m.pairs:
        for a, b in ((i, j), (j, i)):
            r = inst.rank(a, b)
            counts[r - 1] += 1
            total += r
    vec = tuple(counts)
    regret = max((i + 1 for i, v in enumerate(vec) if v), default=0)
    return Profile(vec, vec, vec, regret, Fraction(total, 1))


LESS, EQUAL, GREATER = -1, 0, 1


def compare_profiles(
    x: Sequence[int], y: Sequence[int], mode: str = "forward"
) -> int:
    """Lexicographic comparison of profile vectors; returns LESS/EQUAL/GREATER.

    In "reverse" mode the reversed vectors are compared, which is the order
    used by generous optimality.
    """
    if len(x) != len(y):
        raise ValueError(f"profile lengths differ: {len(x)} vs {len(y)}")
    if mode == "reverse":
        x, y = tuple(reversed(x)), tuple(reversed(y))
    elif mode != "forward":
        raise ValueError(f"unknown mode {mode!r}")
    tx, ty = tuple(x), tuple(y)
    if tx == ty:
        return EQUAL
    return GREATER if tx > ty else LESS


def matching_to_partition(m: Matching) -> Partition:
    """The all-transposition partition induced by a matching."""
    return Partition(Cycle(p) for p in m.pairs)


def partition_to_matching(p: Partition) -> Matching:
    """Inverse of matching_to_partition; fails on any cycle of length != 2."""
    bad = [c for c in p.cycles if len(c) != 2]
    if bad:
        raise ValueError(f"partition has non-transposition cycles: {bad[0]}")
    return Matching(c.agents for c in p.cycles)
