"""Command-line interface.

Exit codes: 0 on success (and on "yes" answers), 1 on "no" answers where a
query can be denied (unsolvable, unstable, threshold not met), 2 on input
errors. The master seed can also be supplied through the SPT_SEED
environment variable; an explicit --seed wins.
"""

from __future__ import annotations

import argparse
import os
import sys

from .budget import DEFAULT_BUDGET, Budget, BudgetExceeded
from .cycles import all_stable_cycles, fixed_cycles, reduced_stable_cycles
from .enumeration import iter_all_partitions, iter_reduced_partitions
from .instance import Instance, ParseError, parse_instance, random_instance, serialize_instance
from .optimal import CRITERIA, ThresholdQuery, decide, optimal_partition
from .partition import parse_partition, profile, verify_partition
from .solver import find_stable_partition
from .stats import run_stats, write_csv


def _load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SPT_SEED")
    if env is not None:
        return int(env)
    return 0


def _print_solution(inst: Instance, part) -> None:
    prof = profile(inst, part)
    print(part)
    print(f"profile: {' '.join(str(v) for v in prof.combined)}")
    print(f"regret: {prof.regret}")
    print(f"cost: {prof.cost}")


def cmd_gen(args) -> int:
    inst = random_instance(args.n, _seed(args))
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_solve(args) -> int:
    inst = _load(args.file)
    _print_solution(inst, find_stable_partition(inst))
    return 0


def cmd_verify(args) -> int:
    inst = _load(args.file)
    part = parse_partition(args.partition)
    bad = verify_partition(inst, part)
    if bad is None:
        print("stable")
        return 0
    print(f"unstable: {bad}")
    return 1


def cmd_enumerate(args) -> int:
    inst = _load(args.file)
    budget = Budget(args.budget)
    it = iter_reduced_partitions(inst, budget) if args.reduced else iter_all_partitions(inst, budget)
    for part in it:
        print(part)
    return 0


def cmd_cycles(args) -> int:
    inst = _load(args.file)
    budget = Budget(args.budget)
    if args.fixed:
        cycles = fixed_cycles(inst, budget)
    elif args.reduced:
        cycles = reduced_stable_cycles(inst, budget)
    else:
        cycles = all_stable_cycles(inst, budget)
    for c in sorted(cycles):
        print(c)
    return 0


def cmd_optimal(args) -> int:
    inst = _load(args.file)
    part = optimal_partition(inst, args.criterion, budget=Budget(args.budget))
    _print_solution(inst, part)
    return 0


def cmd_decide(args) -> int:
    inst = _load(args.file)
    sigma = None
    if args.sigma is not None:
        sigma = tuple(int(tok) for tok in args.sigma.replace(",", " ").split())
    query = ThresholdQuery(args.query, k=args.k, sigma=sigma)
    yes, witness = decide(inst, query, budget=Budget(args.budget))
    if yes:
        print("yes")
        print(witness)
        return 0
    print("no")
    return 1


def cmd_stats(args) -> int:
    sizes = [int(tok) for tok in args.sizes.replace(",", " ").split()]
    rows = run_stats(sizes, args.samples, _seed(args), budget_limit=args.budget)
    text = write_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spt", description="Stable partitions for stable roommates instances."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("-n", type=int, required=True, help="number of agents")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="print one stable partition and its profile")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a partition against an instance")
    p.add_argument("file")
    p.add_argument("--partition", required=True, help='cycles, e.g. "(1 2 3)(4 5 6)"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list stable partitions, one per line")
    p.add_argument("file")
    p.add_argument("--reduced", action="store_true", help="reduced partitions only")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cycles", help="list stable cycles, one per line")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fixed", action="store_true", help="cycles in every partition")
    group.add_argument("--reduced", action="store_true", help="odd cycles and stable pairs")
    group.add_argument("--all", action="store_true", help="all stable cycles (default)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("optimal", help="optimal stable partition under a criterion")
    p.add_argument("file")
    p.add_argument("--criterion", required=True, choices=CRITERIA)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("decide", help="threshold decision problems")
    p.add_argument("file")
    p.add_argument("--query", required=True, choices=("fc", "rank", "rm", "gen", "egal"))
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--sigma", default=None, help="profile vector, comma or space separated")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("stats", help="random-instance experiment, CSV output")
    p.add_argument("--sizes", required=True, help="agent counts, comma separated")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
