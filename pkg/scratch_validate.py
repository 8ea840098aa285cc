"""Scratch validation: solver vs brute force on random instances."""
import itertools
import sys
import time

from spt.instance import Instance, random_instance
from spt.partition import Cycle, Partition, verify_partition
from spt.solver import find_stable_partition
from spt.matchings import find_stable_matching, brute_force_matchings


def brute_partitions(inst):
    agents = inst.agents
    out = []

    def extend(cycles, covered):
        if len(covered) == inst.n:
            p = Partition(cycles)
            if verify_partition(inst, p) is None:
                out.append(p)
            return
        start = min(a for a in agents if a not in covered)

        def grow(path):
            if len(path) >= 2:
                s, q = path[1], path[-1]
                if s == q or inst.prefers(path[0], s, q):
                    extend(cycles + [Cycle(path)], covered | set(path))
            else:
                extend(cycles + [Cycle(path)], covered | set(path))
            last = path[-1]
            prev = path[-2] if len(path) >= 2 else None
            for nxt in agents:
                if nxt in covered or nxt in path or nxt == start:
                    continue
                if prev is not None and not (inst.prefers(last, nxt, prev)):
                    continue
                grow(path + [nxt])

        grow([start])

    extend([], set())
    return set(out)


def main():
    fails = 0
    t0 = time.time()
    count = 0
    for n in (2, 3, 4, 5, 6, 7, 8):
        for seed in range(400):
            inst = random_instance(n, seed * 7919 + n)
            try:
                part = find_stable_partition(inst)
            except Exception as e:
                print(f"n={n} seed={seed}: SOLVER RAISED {type(e).__name__}: {e}")
                fails += 1
                continue
            bf = brute_partitions(inst)
            count += 1
            if part not in bf:
                print(f"n={n} seed={seed}: partition {part} not in brute set {bf}")
                fails += 1
            # odd cycle invariance + solvability cross-check
            odd = frozenset(c for c in part.cycles if len(c) % 2 == 1)
            for p in bf:
                if frozenset(c for c in p.cycles if len(c) % 2 == 1) != odd:
                    print(f"n={n} seed={seed}: odd cycles differ across {p} vs {part}")
                    fails += 1
                    break
            m = find_stable_matching(inst)
            bfm = brute_force_matchings(inst)
            if (m is None) != (len(bfm) == 0):
                print(f"n={n} seed={seed}: solvability mismatch solver={m} brute={len(bfm)}")
                fails += 1
            if m is not None and m not in bfm:
                print(f"n={n} seed={seed}: matching {m} not stable per brute")
                fails += 1
    print(f"checked {count} instances in {time.time()-t0:.1f}s, failures: {fails}")
    return 1 if fails else 0


if __name__ == "__main__":
    sys.exit(main())
