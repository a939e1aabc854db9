"""Exact enumeration, recursions, and bijections for flattened parking functions.

A flattened word is one whose maximal weakly increasing runs have weakly
increasing leading values.  This package enumerates the flattened parking
functions and their insertion-multiset refinements by exhaustive search,
implements every counting recursion and bijection for them, and cross-checks
recursion against enumeration so that each identity is verified (or refuted)
by machine.  All counts are exact arbitrary-precision integers.
"""

from .bijections import (
    BijectionReport,
    DomainError,
    flat_to_partition,
    partition_to_flat,
    rflat_to_partition,
    rpartition_to_flat,
    shift_down,
    shift_up,
    swap_top,
    two_run_shift,
    verify_bijection,
)
from .families import (
    FamilySpec,
    ResourceCeilingError,
    SetPartition,
    count_Bkr,
    count_family,
    count_family_by_runs,
    count_separated,
    count_T,
    enumeration_ceiling,
    format_partition,
    gen_family,
    iter_set_partitions,
    parse_partition,
    restricted_partition_counts,
)
from .gfseries import BivariateSeries, claimed_closed_form, compare_gf, series_exp
from .recursions import (
    MemoTable,
    RecursionId,
    f_flat,
    f_ones,
    f_separated,
    flat2_single_insert,
    flat_count,
    hook_sum,
    ones_count,
    separated_recursion,
)
from .sequences import SequenceTable, bell, catalan, eulerian_one_descent, r_bell
from .words import (
    RunDecomposition,
    Word,
    format_word,
    is_flattened,
    is_parking_function,
    max_runs_bound,
    parse_word,
    run_count,
    run_decomposition,
)

__version__ = "0.1.0"
