"""Recursion methods against the enumeration oracle, plus the memo contract."""

import pytest

from flatpark.recursions import (
    MemoTable,
    f_flat,
    f_ones,
    f_separated,
    flat2_single_insert,
    flat_count,
    hook_sum,
    ones_count,
    separated_recursion,
)
from flatpark.families import FamilySpec, count_family, count_separated
from flatpark.verify import verify_recursion, verify_separation
from flatpark.words import max_runs_bound


def test_flat_examples():
    assert f_flat(3, 2) == 1  # the permutation 132
    for n in range(1, 9):
        assert f_flat(n, 1) == 1
    # brute force over the 24 permutations of [4]: 1243, 1324, 1342, 1423
    assert f_flat(4, 2) == 4


def test_base_case_ledger():
    assert flat_count(0, 1) == 0
    assert flat_count(3, 0) == 0
    assert flat_count(1, 1) == 1
    assert flat_count(6, max_runs_bound(6) + 1) == 0
    assert ones_count(2, 1, 1) == 1  # the all-ones word
    assert ones_count(3, 0, 1) == 0


def test_ones_examples():
    assert f_ones(1, 4, 3) == 3
    assert f_ones(1, 2, 2) == 1
    assert f_ones(2, 3, 3) == 2
    for n in range(1, 8):
        assert f_ones(1, n, 1) == 1
    # convention: r = 0 is the flattened-permutation count
    for n in range(1, 8):
        for k in range(1, max_runs_bound(n) + 1):
            assert f_ones(0, n, k) == f_flat(n, k)


@pytest.mark.parametrize("method", ["flat_perm_sum", "flat_perm_two_term", "flat_perm_third"])
def test_flat_methods_match_brute(method):
    res = verify_recursion(method, n_max=8)
    assert res.passed, res.mismatches


@pytest.mark.parametrize("method", ["ones_eq1", "ones_two_term", "ones_bell_form"])
def test_ones_methods_match_brute(method):
    res = verify_recursion(method, n_max=7)
    assert res.passed, res.mismatches


@pytest.mark.parametrize("method", ["r_ones_eq2", "r_ones_two_term", "r_ones_peel_statement"])
def test_r_ones_methods_match_brute(method):
    res = verify_recursion(method, nr_max=8)
    assert res.passed, res.mismatches


def test_index_discrepancy_is_adjudicated():
    proof = verify_recursion("r_ones_peel_proof", nr_max=8)
    assert proof.passed is False
    assert proof.mismatches
    assert any("r_ones_peel_statement matches" in n for n in proof.notes)
    assert any("r_ones_peel_proof refuted" in n for n in proof.notes)


def test_eq2_statement_variant_is_refuted():
    # the equation as stated over-counts the all-ones-in-first-run case
    assert f_ones(1, 4, 3, method="r_ones_eq2_statement") == 5
    assert ones_count(1, 4, 3) == 3
    res = verify_recursion("r_ones_eq2_statement", nr_max=8)
    assert res.passed is False


def test_method_range_guards():
    with pytest.raises(ValueError, match="2 <= k < n"):
        f_flat(4, 1, method="flat_perm_sum")
    with pytest.raises(ValueError, match="1 <= k < n"):
        f_flat(3, 3, method="flat_perm_two_term")
    with pytest.raises(ValueError, match="r = 1"):
        f_ones(2, 4, 2, method="ones_eq1")
    with pytest.raises(ValueError, match="delegates"):
        f_ones(0, 4, 2, method="ones_two_term")
    with pytest.raises(ValueError, match="unknown"):
        f_flat(4, 2, method="nope")


def test_bell_form_identity():
    # flat_k over [n+1] ⊎ {1} and the flattened permutations of [n+2] agree
    for n in range(1, 7):
        for k in range(1, max_runs_bound(n + 2) + 1):
            assert ones_count(1, n + 1, k) == flat_count(n + 2, k)


def test_flat2_single_insert_and_hook_sum():
    assert flat2_single_insert(3) == 2
    assert flat2_single_insert(4) == 7  # 2^0*3 + 2^1*2
    assert flat2_single_insert(5) == 18  # 4 + 6 + 8
    assert hook_sum(1) == 2
    assert hook_sum(2) == 7  # 3 + 4
    assert hook_sum(3) == 18  # 4 + 6 + 8
    for n in range(3, 9):
        assert flat2_single_insert(n) == hook_sum(n - 2)
    with pytest.raises(ValueError):
        flat2_single_insert(2)
    with pytest.raises(ValueError):
        hook_sum(0)


def test_flat2_single_insert_is_insert_value_independent():
    for n in range(3, 7):
        for ell in range(2, n + 1):
            assert count_family(FamilySpec("flat_s_insertion", n, (ell,), k=2)) \
                == flat2_single_insert(n)


def test_separated_recursion_base_reduces_to_plain_counts():
    # one separated value imposes nothing: the single-term sum is f_{n,k}
    for total in range(2, 8):
        for k in range(1, max_runs_bound(total) + 1):
            assert separated_recursion("sep_base", 1, 0, total, k) == flat_count(total, k)
            assert f_separated(1, 0, total, k, method="recursion") == flat_count(total, k)
            assert f_separated(1, 0, total, k, method="brute") == flat_count(total, k)


def test_separated_recursion_small_case():
    # flattened permutations of [4], 1 and 2 in different runs, 2 runs
    assert separated_recursion("sep_base", 2, 0, 4, 2) == 3
    assert count_separated(2, 0, 4, 2, "ones_same_run") == 3


def test_separation_matrix_is_diagonal():
    base = verify_separation("sep_base", s_max=2, r_max=2, len_max=8)
    assert base.passed
    for rec_id, mode in (
        ("sep_ones_same", "ones_same_run"),
        ("sep_ones_separate", "ones_separate_runs"),
        ("sep_all_compositions", "ones_any_composition"),
    ):
        res = verify_separation(rec_id, s_max=2, r_max=2, len_max=8)
        matches = [n for n in res.notes if "MATCH" in n]
        assert matches == [m for m in matches if mode in m], res.notes
        assert any(mode in m for m in matches)


def test_f_separated_mode_dispatch():
    for total in range(5, 8):
        for k in range(2, max_runs_bound(total) + 1):
            for mode in ("ones_same_run", "ones_separate_runs", "ones_any_composition"):
                rec = f_separated(2, 1, total, k, method="recursion", mode=mode)
                brute = f_separated(2, 1, total, k, method="brute", mode=mode)
                assert rec == brute
    with pytest.raises(ValueError, match="mode"):
        f_separated(2, 1, 6, 2, method="recursion")


def test_memo_table_is_write_once():
    memo = MemoTable()
    memo.put(("id", (1, 2)), 5)
    assert memo.put(("id", (1, 2)), 5) == 5
    assert memo.get(("id", (1, 2))) == 5
    with pytest.raises(RuntimeError, match="rebound"):
        memo.put(("id", (1, 2)), 6)
