"""Find one reduced stable partition of an instance in polynomial time.

The algorithm runs proposal rounds until every agent's proposal is held by
its current first choice (rejections delete pairs mutually), then repeatedly
eliminates rotations from the reduced table. Eliminating a rotation whose
agents form an odd party empties all their lists at once; that elimination is
rolled back and the party is frozen as an odd cycle of the output, following
the successor pointers of the table. Agents whose lists empty during the
proposal rounds stay alone as 1-cycles.

Incomplete preference lists are supported; a 1-cycle then means the agent is
unassigned in every stable outcome. Every returned partition is re-verified
against the stability conditions before it leaves this module, so a bug in
the table machinery surfaces as SolverError rather than as a wrong answer.
"""

from __future__ import annotations

from .instance import Instance
from .partition import Cycle, Partition, verify_partition

__all__ = ["SolverError", "find_stable_partition", "find_stable_partition_cycles"]


class SolverError(RuntimeError):
    """An internal invariant of the partition solver broke."""


class _Table:
    """Reduced preference table with mutual pair deletion and undo."""

    __slots__ = ("m", "pref", "rank", "alive", "count", "head", "tail", "log")

    def __init__(self, pref: list[list[int]]):
        m = len(pref)
        self.m = m
        self.pref = pref
        big = max((len(p) for p in pref), default=0) + 1
        self.rank = [[big] * m for _ in range(m)]
        for i, lst in enumerate(pref):
            for pos, j in enumerate(lst):
                self.rank[i][j] = pos
        self.alive = [bytearray(m) for _ in range(m)]
        for i, lst in enumerate(pref):
            for j in lst:
                self.alive[i][j] = 1
        self.count = [len(lst) for lst in pref]
        self.head = [0] * m
        self.tail = [len(lst) - 1 for lst in pref]
        self.log: list[tuple[int, int]] | None = None

    def first(self, i: int) -> int:
        pref, alive = self.pref[i], self.alive[i]
        h = self.head[i]
        while not alive[pref[h]]:
            h += 1
        self.head[i] = h
        return pref[h]

    def second(self, i: int) -> int:
        pref, alive = self.pref[i], self.alive[i]
        h = self.head[i]
        while not alive[pref[h]]:
            h += 1
        self.head[i] = h
        h += 1
        while not alive[pref[h]]:
            h += 1
        return pref[h]

    def last(self, i: int) -> int:
        pref, alive = self.pref[i], self.alive[i]
        t = self.tail[i]
        while not alive[pref[t]]:
            t -= 1
        self.tail[i] = t
        return pref[t]

    def delete(self, i: int, j: int) -> bool:
        if not self.alive[i][j]:
            return False
        self.alive[i][j] = 0
        self.alive[j][i] = 0
        self.count[i] -= 1
        self.count[j] -= 1
        if self.log is not None:
            self.log.append((i, j))
        return True

    def truncate_below(self, j: int, i: int) -> list[int]:
        """Delete every pair {j, w} with w strictly worse than i on j's list."""
        dropped = []
        pref, alive = self.pref[j], self.alive[j]
        for pos in range(len(pref) - 1, self.rank[j][i], -1):
            w = pref[pos]
            if alive[w]:
                self.delete(j, w)
                dropped.append(w)
        return dropped

    def alive_entries(self, i: int) -> list[int]:
        alive = self.alive[i]
        return [j for j in self.pref[i] if alive[j]]


def find_stable_partition_cycles(inst: Instance) -> list[tuple[int, ...]]:
    """The cycles of one reduced stable partition, as agent tuples."""
    m = inst.n
    if m == 0:
        return []
    agents = inst.agents
    idx = {a: t for t, a in enumerate(agents)}
    table = _Table([[idx[b] for b in inst.prefs[a]] for a in agents])

    # Proposal rounds. holder[j] is the agent whose proposal j currently
    # holds; a deleted pair whose proposal was held frees the proposer again.
    holder = [-1] * m
    free = list(range(m - 1, -1, -1))

    def settle() -> None:
        while free:
            i = free.pop()
            if table.count[i] == 0:
                continue
            j = table.first(i)
            if holder[j] == i:
                continue
            # Any live entry of j's list is at least as good as its current
            # holder, so j always accepts and truncates below i.
            for w in table.truncate_below(j, i):
                if holder[w] == j:
                    holder[w] = -1
                    free.append(j)
                if holder[j] == w:
                    holder[j] = -1
                    free.append(w)
            holder[j] = i

    settle()

    frozen: list[tuple[int, ...]] = []
    inactive = bytearray(m)
    for i in range(m):
        if table.count[i] == 0:
            frozen.append((i,))
            inactive[i] = 1

    def freeze_party(members: set[int]) -> None:
        start = min(members)
        walk = [start]
        cur = table.first(start)
        while cur != start:
            if cur not in members or len(walk) > len(members):
                raise SolverError("party successor walk left the party")
            walk.append(cur)
            cur = table.first(cur)
        if len(walk) != len(members) or len(walk) % 2 == 0:
            raise SolverError("frozen party is not a single odd cycle")
        for pos, a in enumerate(walk):
            if table.last(a) != walk[pos - 1]:
                raise SolverError("party predecessor pointers are inconsistent")
        frozen.append(tuple(walk))
        for s in members:
            inactive[s] = 1
            for w in table.alive_entries(s):
                table.delete(s, w)
        for i in range(m):
            if not inactive[i] and table.count[i] == 0:
                raise SolverError("freezing a party emptied an outside list")

    while True:
        x = -1
        for i in range(m):
            if not inactive[i] and table.count[i] >= 2:
                x = i
                break
        if x < 0:
            break

        # Expose a rotation: repeatedly step to the last entry of the second
        # entry's list until an agent repeats; the tail loop is the rotation.
        seq: list[int] = []
        pos: dict[int, int] = {}
        a = x
        while a not in pos:
            if table.count[a] < 2:
                raise SolverError("rotation walk reached a single-entry list")
            pos[a] = len(seq)
            seq.append(a)
            a = table.last(table.second(a))
        cyc = seq[pos[a]:]
        ys = [table.second(ai) for ai in cyc]

        head_snap = table.head[:]
        tail_snap = table.tail[:]
        table.log = []
        for ai, yi in zip(cyc, ys):
            table.truncate_below(yi, ai)
        log, table.log = table.log, None

        emptied = {t for i, j in log for t in (i, j) if table.count[t] == 0}
        if not emptied:
            continue

        # An emptied list marks the rotation as an odd party: roll the
        # elimination back and freeze the party as an invariant odd cycle.
        for i, j in log:
            table.alive[i][j] = 1
            table.alive[j][i] = 1
            table.count[i] += 1
            table.count[j] += 1
        table.head = head_snap
        table.tail = tail_snap
        if not emptied <= set(cyc):
            raise SolverError("elimination emptied a list outside the rotation")
        freeze_party(set(cyc))

    cycles = list(frozen)
    for i in range(m):
        if inactive[i] or table.count[i] != 1:
            continue
        j = table.first(i)
        if table.first(j) != i:
            raise SolverError("final table is not a symmetric pairing")
        if i < j:
            cycles.append((i, j))
    return [tuple(agents[t] for t in walk) for walk in cycles]


def find_stable_partition(inst: Instance) -> Partition:
    """One reduced stable partition; every instance admits one.

    The result is verified against the stability conditions before being
    returned. Odd cycles of the result (including 1-cycles) are invariant
    across all stable partitions of the instance; the instance admits a
    stable matching covering everyone iff there are none.
    """
    part = Partition(Cycle(walk) for walk in find_stable_partition_cycles(inst))
    bad = verify_partition(inst, part)
    if bad is not None:
        raise SolverError(f"solver produced an unstable partition: {bad}")
    return part
