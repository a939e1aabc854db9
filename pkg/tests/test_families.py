"""The enumeration streams, checked against dumb independent oracles."""

from itertools import permutations, product

import pytest

from flatpark.families import (
    FamilySpec,
    ResourceCeilingError,
    count_Bkr,
    count_family,
    count_family_by_runs,
    count_separated,
    count_T,
    format_partition,
    gen_family,
    iter_set_partitions,
    parse_partition,
    restricted_partition_counts,
)
from flatpark.words import is_flattened, is_parking_function, max_runs_bound, run_count


def naive_partitions(n):
    """Independent set-partition generator: insert n into every spot."""
    if n == 0:
        yield []
        return
    for smaller in naive_partitions(n - 1):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] + [n]] + smaller[i + 1:]
        yield smaller + [[n]]


def as_blocksets(p):
    return frozenset(frozenset(b) for b in p)


# ---------------------------------------------------------------------------
# word families
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_flat_pf_matches_naive_product_filter(n):
    naive = sorted(
        w for w in product(range(1, n + 1), repeat=n)
        if is_parking_function(w) and is_flattened(w)
    )
    assert list(gen_family(FamilySpec("flat_pf", n))) == naive


@pytest.mark.parametrize("n,S", [(2, (1, 1)), (3, (2,)), (3, (1,)), (4, (2, 4))])
def test_flat_s_insertion_matches_naive_filter(n, S):
    multiset = tuple(sorted(tuple(range(1, n + 1)) + S))
    naive = sorted(set(p for p in permutations(multiset) if is_flattened(p)))
    assert list(gen_family(FamilySpec("flat_s_insertion", n, S))) == naive


def test_insertion_words_from_a_single_permutation_are_covered():
    family = set(gen_family(FamilySpec("s_insertion_pf", 2, (1, 1))))
    # inserting {1,1} into the permutation 12 gives these three words
    assert {(1, 1, 1, 2), (1, 1, 2, 1), (1, 2, 1, 1)} <= family
    assert family == {(1, 1, 1, 2), (1, 1, 2, 1), (1, 2, 1, 1), (2, 1, 1, 1)}


def test_flat_s_insertion_example_values():
    members = list(gen_family(FamilySpec("flat_s_insertion", 3, (2,))))
    assert members == [(1, 2, 2, 3), (1, 2, 3, 2), (1, 3, 2, 2)]
    assert count_family(FamilySpec("flat_s_insertion", 2, (1,), k=2)) == 1
    assert next(iter(gen_family(FamilySpec("flat_s_insertion", 2, (1,), k=2)))) == (1, 2, 1)


def test_flat_pf_singleton():
    assert list(gen_family(FamilySpec("flat_pf", 1))) == [(1,)]


@pytest.mark.parametrize("n,total", [(1, 1), (2, 3), (3, 16), (4, 125)])
def test_parking_function_counts(n, total):
    # |PF_n| = (n+1)^(n-1)
    members = list(gen_family(FamilySpec("parking_functions", n)))
    assert len(members) == total
    assert all(is_parking_function(w) for w in members)


def test_stream_is_sorted_and_duplicate_free():
    for spec in (FamilySpec("flat_pf", 5), FamilySpec("flat_s_insertion", 4, (1, 1)),
                 FamilySpec("s_insertion_pf", 3, (2,))):
        members = list(gen_family(spec))
        assert all(a < b for a, b in zip(members, members[1:]))


def test_flat_s_insertion_members_have_the_right_shape():
    spec = FamilySpec("flat_s_insertion", 4, (1, 3))
    expected_multiset = tuple(sorted((1, 2, 3, 4, 1, 3)))
    for w in gen_family(spec):
        assert tuple(sorted(w)) == expected_multiset
        assert is_parking_function(w)
        assert is_flattened(w)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_count_by_runs_sums_to_total(n):
    by_runs = count_family_by_runs(FamilySpec("flat_pf", n))
    assert sum(by_runs.values()) == count_family(FamilySpec("flat_pf", n))
    assert all(k <= max_runs_bound(n) for k in by_runs)
    assert count_family(FamilySpec("flat_pf", n, k=max_runs_bound(n) + 1)) == 0


def test_parallel_counting_merges_to_the_same_histogram():
    spec = FamilySpec("flat_pf", 6)
    assert count_family_by_runs(spec, jobs=3) == count_family_by_runs(spec, jobs=1)
    spec2 = FamilySpec("flat_s_insertion", 4, (1, 1))
    assert count_family_by_runs(spec2, jobs=2) == count_family_by_runs(spec2, jobs=1)


def test_ceiling_is_enforced(monkeypatch):
    with pytest.raises(ResourceCeilingError, match="ceiling"):
        count_family(FamilySpec("flat_pf", 13))
    monkeypatch.setenv("FLATPARK_CEILING", "4")
    with pytest.raises(ResourceCeilingError):
        count_family(FamilySpec("flat_pf", 5))
    assert count_family(FamilySpec("flat_pf", 4)) == 46


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("nonsense", 3)
    with pytest.raises(ValueError):
        FamilySpec("flat_s_insertion", 3)  # S required
    with pytest.raises(ValueError):
        FamilySpec("flat_s_insertion", 3, (5,))  # outside [n+1]
    with pytest.raises(ValueError):
        FamilySpec("flat_pf", 3, S=(1,))
    with pytest.raises(ValueError):
        FamilySpec("restricted_set_partitions", 4)  # r required


# ---------------------------------------------------------------------------
# set partitions
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_set_partitions_match_naive_generator(n):
    ours = [as_blocksets(p.blocks) for p in iter_set_partitions(n)]
    naive = {as_blocksets(p) for p in naive_partitions(n)}
    assert len(ours) == len(set(ours))
    assert set(ours) == naive


def test_restricted_partitions_respect_separation():
    for p in iter_set_partitions(5, sep_r=3):
        labels = {}
        for i, b in enumerate(p.blocks):
            for x in b:
                labels[x] = i
        assert len({labels[1], labels[2], labels[3]}) == 3
    # independent count: partitions of [5] where 1,2,3 are pairwise separated
    naive = sum(
        1 for p in naive_partitions(5)
        if all(len({1, 2, 3} & set(b)) <= 1 for b in p)
    )
    assert sum(1 for _ in iter_set_partitions(5, sep_r=3)) == naive


def test_partition_format_round_trip():
    p = next(iter(iter_set_partitions(4, sep_r=2)))
    assert parse_partition(format_partition(p)) == p
    assert format_partition(parse_partition("13/24")) == "13/24"


# ---------------------------------------------------------------------------
# partition statistics: T(n,k) and the (r,k)-Bell triangle
# ---------------------------------------------------------------------------


def test_count_T_examples():
    assert count_T(3, 1) == 4
    for n in range(1, 7):
        assert count_T(n, 0) == 1
    # brute force over the 15 set partitions of [4]
    naive = sum(1 for p in naive_partitions(4) if sum(1 for b in p if len(b) >= 2) == 2)
    assert naive == 3
    assert count_T(4, 2) == 3


def test_count_Bkr_published_cells():
    assert count_Bkr(3, 2, 2) == 7
    assert count_Bkr(5, 4, 3) == 391
    for r in (1, 2, 3, 4):
        assert count_Bkr(1, r, 0) == 0
        assert count_Bkr(1, r, 1) == 1
        assert count_Bkr(1, r, 2) == 0


def test_count_Bkr_matches_word_enumeration():
    # same cell two ways: restricted partitions of [n-1+r] vs words over [n] ⊎ 1^r
    for r in (1, 2, 3):
        for n in range(1, 5):
            words = count_family_by_runs(FamilySpec("flat_s_insertion", n, (1,) * r))
            for k in range(1, max_runs_bound(n + r) + 1):
                assert count_Bkr(n, r, k) == words.get(k, 0)


def test_row_sums_are_restricted_partition_totals():
    for r in (2, 3):
        for n in range(1, 6):
            total = sum(count_Bkr(n, r, k) for k in range(0, n + r + 1))
            ground = n - 1 + r
            naive = sum(
                1 for p in naive_partitions(ground)
                if all(len(set(range(1, r + 1)) & set(b)) <= 1 for b in p)
            )
            assert total == naive
            assert total == sum(restricted_partition_counts(ground, r).values())


# ---------------------------------------------------------------------------
# separation statistics
# ---------------------------------------------------------------------------


def test_count_separated_s1_is_unconstrained():
    # with s=1 and r=0 the predicate is vacuous on flattened permutations
    for n in range(2, 7):
        flat_perms = [p for p in permutations(range(1, n + 1)) if is_flattened(p)]
        for k in range(1, max_runs_bound(n) + 1):
            expect = sum(1 for p in flat_perms if run_count(p) == k)
            for mode in ("ones_same_run", "ones_separate_runs", "ones_any_composition"):
                assert count_separated(1, 0, n, k, mode) == expect


def test_count_separated_first_two_values_in_distinct_runs():
    # flattened permutations of [4] with 1 and 2 in different runs, two runs:
    # 1324, 1342, 1423 (from the 5 flattened permutations of [4])
    assert count_separated(2, 0, 4, 2, "ones_same_run") == 3


def test_count_separated_modes_differ_with_extra_ones():
    # hand-enumerated over flat_2(PF_4({1})), s=2: both ones sharing a run
    # leaves 11324, 11342, 11423
    assert count_separated(2, 1, 4, 2, "ones_same_run") == 3
    both = count_separated(2, 1, 4, 2, "ones_any_composition")
    split = count_separated(2, 1, 4, 2, "ones_separate_runs")
    assert both == 3 + split


def test_count_separated_validation():
    with pytest.raises(ValueError):
        count_separated(5, 0, 4, 2, "ones_same_run")
    with pytest.raises(ValueError):
        count_separated(2, 1, 4, 2, "bogus_mode")
