"""Stable partitions for the stable roommates problem.

Solve, verify, enumerate, and optimize stable partitions (stable
half-matchings) of roommates instances with strict preferences, with
brute-force oracles and a seeded experiment harness.
"""

from .budget import Budget, BudgetExceeded, DEFAULT_BUDGET
from .cycles import (
    all_stable_cycles,
    complete_even_cycle,
    fixed_cycles,
    reduced_stable_cycles,
    verify_cycle,
)
from .enumeration import (
    PartialPartition,
    brute_force_partitions,
    enumerate_all_partitions,
    enumerate_all_partitions_naive,
    enumerate_reduced_partitions,
    extension_feasible,
    fc_helper,
    iter_all_partitions,
    iter_reduced_partitions,
)
from .instance import (
    GADGET_SIZE,
    DuplicateEntryError,
    Instance,
    MalformedLineError,
    NonMutualError,
    ParseError,
    SelfPreferenceError,
    UnknownAgentError,
    attach_gadget,
    parse_instance,
    random_instance,
    serialize_instance,
)
from .matchings import (
    all_stable_matchings,
    brute_force_matchings,
    find_stable_matching,
    fixed_pairs,
    iter_stable_matchings,
    stable_pairs,
)
from .optimal import (
    CRITERIA,
    BridgeReport,
    ThresholdQuery,
    decide,
    min_regret_partition,
    min_regret_partition_fast,
    optimal_partition,
    stable_matching_profile_bridge,
)
from .partition import (
    Cycle,
    CycleDecomposition,
    Matching,
    Partition,
    Profile,
    Violation,
    break_even_cycle,
    compare_profiles,
    decompose,
    matching_profile,
    matching_to_partition,
    merge,
    parse_partition,
    partition_to_matching,
    profile,
    reduce_partition,
    verify_matching,
    verify_partition,
)
from .solver import SolverError, find_stable_partition
from .stats import AggregateRow, InstanceStats, collect_stats, instance_seeds, run_stats, write_csv
from .transforms import TransformResult, construct_ie, construct_ip, construct_is, construct_it, lift

__version__ = "0.1.0"
