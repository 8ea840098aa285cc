"""Stable-roommates instances: strict preference lists with mutual acceptability.

Agents are positive integers. Canonical instances number their agents 1..n;
sub-instances produced by restriction or by the transform constructions keep
their source ids, so the agent set of an instance may be sparse. Dummy agents
introduced by padding always receive ids above every source id.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from numpy.random import Generator, Philox

__all__ = [
    "Instance",
    "ParseError",
    "MalformedLineError",
    "SelfPreferenceError",
    "DuplicateEntryError",
    "NonMutualError",
    "UnknownAgentError",
    "parse_instance",
    "serialize_instance",
    "random_instance",
    "attach_gadget",
    "GADGET_SIZE",
]

_MASK64 = (1 << 64) - 1

# Comparison keys: staying alone beats only unlisted agents.
_SELF_KEY = 1 << 30
_UNACCEPTABLE_KEY = 1 << 31


class ParseError(ValueError):
    """Instance text is invalid; ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedLineError(ParseError):
    pass


class SelfPreferenceError(ParseError):
    pass


class DuplicateEntryError(ParseError):
    pass


class NonMutualError(ParseError):
    pass


class UnknownAgentError(ParseError):
    pass


class Instance:
    """A set of agents, each with a strict preference list over other agents.

    Immutable after construction; safe to share between threads. Acceptability
    is always mutual: j appears on i's list iff i appears on j's list.
    """

    __slots__ = ("agents", "prefs", "_rank", "_hash")

    def __init__(self, prefs: Mapping[int, Iterable[int]], *, _validate: bool = True):
        items = {int(a): tuple(int(b) for b in lst) for a, lst in prefs.items()}
        self.agents: tuple[int, ...] = tuple(sorted(items))
        self.prefs: dict[int, tuple[int, ...]] = {a: items[a] for a in self.agents}
        if _validate:
            self._validate()
        self._rank: dict[int, dict[int, int]] = {
            a: {b: r for r, b in enumerate(lst, start=1)} for a, lst in self.prefs.items()
        }
        self._hash: int | None = None

    def _validate(self) -> None:
        members = set(self.agents)
        for a, lst in self.prefs.items():
            if a <= 0:
                raise ValueError(f"agent ids must be positive, got {a}")
            seen = set()
            for b in lst:
                if b == a:
                    raise ValueError(f"agent {a} ranks itself")
                if b in seen:
                    raise ValueError(f"agent {a} ranks {b} twice")
                if b not in members:
                    raise ValueError(f"agent {a} ranks unknown agent {b}")
                seen.add(b)
        for a, lst in self.prefs.items():
            for b in lst:
                if a not in self.prefs[b]:
                    raise ValueError(f"acceptability is not mutual for {{{a}, {b}}}")

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def complete(self) -> bool:
        """True iff every agent ranks all other agents."""
        return all(len(lst) == len(self.agents) - 1 for lst in self.prefs.values())

    def rank(self, i: int, j: int) -> int | None:
        """1-based position of j in i's list, or None if j is unacceptable."""
        if i == j:
            raise ValueError(f"rank({i}, {i}) is undefined: agents do not rank themselves")
        if i not in self.prefs:
            raise ValueError(f"unknown agent {i}")
        return self._rank[i].get(j)

    def _key(self, i: int, j: int) -> int:
        if j == i:
            return _SELF_KEY
        return self._rank[i].get(j, _UNACCEPTABLE_KEY)

    def prefers(self, i: int, j: int, k: int) -> bool:
        """True iff i strictly prefers j over k.

        Self compares worse than every listed agent; an unlisted agent
        compares worse than everything, including self.
        """
        if i not in self.prefs:
            raise ValueError(f"unknown agent {i}")
        return self._key(i, j) < self._key(i, k)

    def acceptable(self, i: int, j: int) -> bool:
        return j in self._rank.get(i, ())

    def restrict(self, keep: Iterable[int]) -> "Instance":
        """Sub-instance over ``keep``; preference order is preserved."""
        kept = set(keep)
        extra = kept - set(self.agents)
        if extra:
            raise ValueError(f"cannot restrict to unknown agents {sorted(extra)}")
        prefs = {
            a: tuple(b for b in self.prefs[a] if b in kept)
            for a in self.agents
            if a in kept
        }
        return Instance(prefs, _validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self.agents == other.agents and self.prefs == other.prefs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple((a, self.prefs[a]) for a in self.agents))
        return self._hash

    def __repr__(self) -> str:
        return f"Instance(n={self.n})"


def parse_instance(text: str) -> Instance:
    """Parse the instance file format.

    Line 1 holds the agent count; every following line reads
    ``i: j1 j2 ... jk`` in strict preference order. Blank lines and ``#``
    comments are ignored.
    """
    declared: int | None = None
    header_line = 0
    prefs: dict[int, tuple[int, ...]] = {}
    where: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if declared is None:
            try:
                declared = int(content)
            except ValueError:
                raise MalformedLineError(lineno, f"expected agent count, got {content!r}")
            if declared < 0:
                raise MalformedLineError(lineno, "agent count must be non-negative")
            header_line = lineno
            continue
        head, sep, tail = content.partition(":")
        if not sep:
            raise MalformedLineError(lineno, "expected 'agent: preferences'")
        try:
            agent = int(head)
            entries = tuple(int(tok) for tok in tail.split())
        except ValueError:
            raise MalformedLineError(lineno, f"non-integer token in {content!r}")
        if agent <= 0 or any(e <= 0 for e in entries):
            raise MalformedLineError(lineno, "agent ids must be positive")
        if agent in prefs:
            raise DuplicateEntryError(lineno, f"agent {agent} defined twice")
        seen: set[int] = set()
        for e in entries:
            if e == agent:
                raise SelfPreferenceError(lineno, f"agent {agent} ranks itself")
            if e in seen:
                raise DuplicateEntryError(lineno, f"agent {agent} ranks {e} twice")
            seen.add(e)
        prefs[agent] = entries
        where[agent] = lineno

    if declared is None:
        raise MalformedLineError(1, "empty input: expected agent count")
    if len(prefs) != declared:
        raise MalformedLineError(
            header_line, f"declared {declared} agents but found {len(prefs)}"
        )
    for agent, entries in prefs.items():
        for e in entries:
            if e not in prefs:
                raise UnknownAgentError(
                    where[agent], f"agent {agent} ranks unknown agent {e}"
                )
            if agent not in prefs[e]:
                raise NonMutualError(
                    where[agent], f"acceptability is not mutual for {{{agent}, {e}}}"
                )
    return Instance(prefs, _validate=False)


def serialize_instance(inst: Instance) -> str:
    """Inverse of parse_instance; agents are written in ascending order."""
    lines = [str(inst.n)]
    for a in inst.agents:
        entries = " ".join(str(b) for b in inst.prefs[a])
        lines.append(f"{a}: {entries}" if entries else f"{a}:")
    return "\n".join(lines) + "\n"


def random_instance(n: int, seed: int) -> Instance:
    """Complete instance on agents 1..n with uniformly random preference lists.

    Each agent's list is an independent uniform permutation drawn from a
    Philox stream keyed by (seed, agent index), so the output is identical
    across platforms and the per-agent draws are order-independent.
    """
    if n < 2:
        raise ValueError(f"need at least 2 agents, got {n}")
    seed &= _MASK64
    prefs: dict[int, tuple[int, ...]] = {}
    for a in range(1, n + 1):
        rng = Generator(Philox(key=[seed, a]))
        others = [b for b in range(1, n + 1) if b != a]
        order = rng.permutation(n - 1)
        prefs[a] = tuple(others[k] for k in order)
    return Instance(prefs, _validate=False)


GADGET_SIZE = 6

# Top-three entries of the six added agents, as offsets into the gadget block.
# They force the invariant odd cycles (b1 b2 b3)(b4 b5 b6) while no added
# agent is ever assigned a first choice.
_GADGET_TOP3 = {
    1: (4, 2, 3),
    2: (4, 3, 1),
    3: (5, 1, 2),
    4: (3, 5, 6),
    5: (1, 6, 4),
    6: (1, 4, 5),
}


def attach_gadget(inst: Instance) -> Instance:
    """Append six agents forming two forced 3-cycles.

    The result is unsolvable, its stable partitions are exactly those of
    ``inst`` plus the two added cycles, and first-choice counts are
    preserved. After their top three entries, added agents rank the
    remaining added agents and then all original agents in ascending order;
    original agents append the added agents at the ends of their lists.
    """
    if not inst.complete:
        raise ValueError("gadget attachment requires a complete instance")
    base = max(inst.agents, default=0)
    block = [base + k for k in range(1, GADGET_SIZE + 1)]
    prefs: dict[int, tuple[int, ...]] = {
        a: inst.prefs[a] + tuple(block) for a in inst.agents
    }
    for k in range(1, GADGET_SIZE + 1):
        top = [base + t for t in _GADGET_TOP3[k]]
        rest = [b for b in block if b != base + k and b not in top]
        prefs[base + k] = tuple(top + rest + list(inst.agents))
    return Instance(prefs, _validate=False)
