"""The five bijections: worked examples, domain errors, exhaustive round trips."""

import pytest

from flatpark.bijections import (
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
from flatpark.families import FamilySpec, gen_family, iter_set_partitions, parse_partition
from flatpark.words import run_count


def test_shift_down_examples():
    assert shift_down((1, 2, 2, 3), 3, (2,)) == (1, 1, 1, 2)
    assert shift_down((1, 2, 3, 2), 3, (2,)) == (1, 1, 2, 1)
    # one-run words stay one-run
    w = (1, 2, 3, 4, 4)
    out = shift_down(w, 4, (4,))
    assert run_count(out) == 1
    assert shift_up(out, 4, (4,)) == w


def test_shift_down_images_land_in_the_companion_family():
    targets = set(gen_family(FamilySpec("flat_s_insertion", 2, (1, 1))))
    images = {shift_down(w, 3, (2,)) for w in gen_family(FamilySpec("flat_s_insertion", 3, (2,)))}
    assert images <= targets


def test_shift_down_domain_errors():
    with pytest.raises(DomainError):
        shift_down((1, 1, 2, 3), 3, (1,))  # S may not contain 1
    with pytest.raises(DomainError):
        shift_down((1, 3, 2, 2), 3, (3,))  # wrong multiset for S={3}
    with pytest.raises(DomainError):
        shift_down((2, 1, 2, 3), 3, (2,))  # not flattened


def test_swap_top_changes_exactly_one_letter():
    for w in gen_family(FamilySpec("flat_s_insertion", 4, (3,))):
        out = swap_top(w, 4, "n_minus_1_to_n")
        diffs = [i for i in range(len(w)) if w[i] != out[i]]
        assert len(diffs) == 1
        assert w[diffs[0]] == 3 and out[diffs[0]] == 4
        assert run_count(out) == run_count(w)
        assert swap_top(out, 4, "n_to_n_minus_1") == w


def test_swap_top_domain_errors():
    with pytest.raises(DomainError):
        swap_top((1, 2, 3, 4), 4, "n_minus_1_to_n")  # only one 3
    with pytest.raises(DomainError):
        swap_top((1, 2, 3, 3, 4), 4, "sideways")


def test_two_run_shift_examples():
    # flat_2(PF_4({2})) <-> flat_2(PF_4({3})), both of size 7
    src = list(gen_family(FamilySpec("flat_s_insertion", 4, (2,), k=2)))
    dst = set(gen_family(FamilySpec("flat_s_insertion", 4, (3,), k=2)))
    assert len(src) == len(dst) == 7
    images = set()
    for w in src:
        out = two_run_shift(w, 4, 3, "up")
        assert out in dst
        assert two_run_shift(out, 4, 3, "down") == w
        images.add(out)
    assert images == dst


def test_two_run_shift_rejects_three_runs_and_small_insert():
    with pytest.raises(DomainError, match="two runs"):
        two_run_shift((1, 4, 2, 3, 2), 4, 3, "up")  # 14232 has three runs
    with pytest.raises(DomainError, match="3 <= ell"):
        two_run_shift((1, 2, 1, 3), 3, 2, "up")


def test_partition_cycling_examples():
    assert partition_to_flat(parse_partition("1/23")) == (1, 1, 3, 2)
    assert flat_to_partition((1, 1, 3, 2)) == parse_partition("1/23")
    singles = parse_partition("1/2/3/4")
    w = partition_to_flat(singles)
    assert w == (1, 1, 2, 3, 4)
    assert run_count(w) == 1
    # all 5 partitions of [3] map injectively into the 5 one-insertion words
    family = set(gen_family(FamilySpec("flat_s_insertion", 3, (1,))))
    images = {partition_to_flat(p) for p in iter_set_partitions(3)}
    assert len(images) == 5
    assert images == family


def test_partition_round_trip_and_statistic():
    for n in range(1, 7):
        for p in iter_set_partitions(n):
            w = partition_to_flat(p)
            assert run_count(w) == 1 + p.big_block_count()
            assert flat_to_partition(w) == p


def test_rpartition_example():
    p = parse_partition("13/24")
    assert rpartition_to_flat(p, 2) == (1, 2, 1, 3, 1)
    assert rflat_to_partition((1, 2, 1, 3, 1), 2) == p
    # all-singleton partition gives the one-run word 1 1..1 2 3 ... n+1
    q = parse_partition("1/2/3/4/5")
    w = rpartition_to_flat(q, 3)
    assert w == (1, 1, 1, 1, 2, 3)
    assert run_count(w) == 1


def test_rpartition_requires_separation():
    with pytest.raises(DomainError, match="distinct blocks"):
        rpartition_to_flat(parse_partition("12/34"), 2)


def test_flat_to_partition_domain_errors():
    with pytest.raises(DomainError):
        flat_to_partition((1, 2, 3))  # multiset lacks the doubled 1
    with pytest.raises(DomainError):
        flat_to_partition((1, 3, 2, 1))  # not flattened... (13|2|1 leads 1,2,1)


@pytest.mark.parametrize(
    "name,kwargs",
    [
        ("shift_down", dict(n=3, S=(2,))),
        ("shift_down", dict(n=5, S=(2, 4))),
        ("swap_top", dict(n=4, S=())),
        ("swap_top", dict(n=5, S=(1, 2))),
        ("two_run_shift", dict(n=5, ell=3)),
        ("two_run_shift", dict(n=6, ell=6)),
        ("partition_to_flat", dict(n=5)),
        ("rpartition_to_flat", dict(n=3, r=2)),
        ("rpartition_to_flat", dict(n=4, r=3)),
        ("rpartition_to_flat", dict(n=1, r=2)),
    ],
)
def test_verify_bijection_suites(name, kwargs):
    report = verify_bijection(name, **kwargs)
    assert report.ok, report.counterexamples
    assert report.domain_size == report.codomain_size


def test_verify_report_shapes():
    report = verify_bijection("shift_down", n=3, S=(2,))
    assert report.domain_size == 3
    d = report.to_dict()
    assert d["ok"] is True and d["counterexamples"] == []
    report2 = verify_bijection("rpartition_to_flat", n=3, r=2)
    assert report2.domain_size == 10  # 1 + 7 + 2
    with pytest.raises(ValueError):
        verify_bijection("nonsense", n=3)
