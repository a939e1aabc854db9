"""Exhaustive generation and brute-force counting for every word and partition family.

Everything here is ground truth: streams are produced by plain depth-first
search with feasibility pruning, in deterministic lexicographic order, and the
recursion and bijection modules are tested against them.  Counting by brute
force is viable because flattenedness is a savage filter (the flattened
families grow like Bell numbers, not factorially); the one genuinely large
sweep, full flattened parking functions at length 8, is handled by pruning the
search rather than scanning all of [8]^8.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .words import Word, run_count

DEFAULT_ENUMERATION_CEILING = 12
CEILING_ENV_VAR = "FLATPARK_CEILING"

WORD_FAMILIES = frozenset(
    {"permutations", "parking_functions", "flat_pf", "s_insertion_pf", "flat_s_insertion"}
)
PARTITION_FAMILIES = frozenset({"set_partitions", "restricted_set_partitions"})
FAMILIES = WORD_FAMILIES | PARTITION_FAMILIES

SEPARATION_MODES = ("ones_same_run", "ones_separate_runs", "ones_any_composition")


class ResourceCeilingError(RuntimeError):
    """Raised when an enumeration would exceed the configured size ceiling."""


def enumeration_ceiling() -> int:
    """Current enumeration ceiling (object size, word length or ground-set size)."""
    raw = os.environ.get(CEILING_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_CEILING
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CEILING_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{CEILING_ENV_VAR} must be >= 1, got {value}")
    return value


def _check_ceiling(size: int, what: str) -> None:
    bound = enumeration_ceiling()
    if size > bound:
        raise ResourceCeilingError(
            f"{what} of size {size} exceeds the enumeration ceiling {bound} "
            f"(raise {CEILING_ENV_VAR} to override)"
        )


class SetPartition(NamedTuple):
    """A set partition of [n]; blocks are sorted tuples ordered by their minima."""

    blocks: tuple[tuple[int, ...], ...]
    n: int

    def big_block_count(self) -> int:
        """Number of blocks with at least two elements."""
        return sum(1 for b in self.blocks if len(b) >= 2)


def format_partition(p: SetPartition) -> str:
    """Render a partition in block notation, e.g. ``13/2``."""
    sep = "" if p.n <= 9 else ","
    return "/".join(sep.join(str(x) for x in b) for b in p.blocks)


def parse_partition(text: str) -> SetPartition:
    """Parse block notation (``13/2`` or ``1,13/2`` for ground sets past 9)."""
    blocks = []
    for part in text.strip().split("/"):
        if "," in part:
            blocks.append(tuple(sorted(int(x) for x in part.split(","))))
        else:
            blocks.append(tuple(sorted(int(ch) for ch in part)))
    blocks.sort(key=min)
    elements = sorted(x for b in blocks for x in b)
    n = len(elements)
    if elements != list(range(1, n + 1)):
        raise ValueError(f"blocks do not partition [{n}]: {text!r}")
    return SetPartition(tuple(blocks), n)


@dataclass(frozen=True)
class FamilySpec:
    """Which family to enumerate, plus its size parameters.

    ``n`` is the base size: word length for plain families, size of the
    underlying permutation for insertion families (words then have length
    ``n + len(S)``), ground-set size for partition families.  ``k`` filters
    word families by run count.  ``r`` is the first-r-separated restriction
    for ``restricted_set_partitions``.
    """

    family: str
    n: int
    S: tuple[int, ...] = field(default=())
    k: int | None = None
    r: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "S", tuple(sorted(self.S)))
        insertion = self.family in ("s_insertion_pf", "flat_s_insertion")
        if insertion:
            if not self.S:
                raise ValueError(f"{self.family} requires a non-empty insertion multiset S")
            if any(v < 1 or v > self.n + 1 for v in self.S):
                raise ValueError(f"S values must lie in [n+1] = [1..{self.n + 1}], got {self.S}")
        elif self.S:
            raise ValueError(f"{self.family} takes no insertion multiset")
        if self.k is not None:
            if self.family in PARTITION_FAMILIES:
                raise ValueError("run-count filter applies to word families only")
            if self.k < 1:
                raise ValueError("k must be >= 1")
        if self.r is not None:
            if self.family != "restricted_set_partitions":
                raise ValueError("r applies to restricted_set_partitions only")
            if not 1 <= self.r <= self.n:
                raise ValueError("need 1 <= r <= n")
        elif self.family == "restricted_set_partitions":
            raise ValueError("restricted_set_partitions requires r")

    @property
    def object_size(self) -> int:
        return self.n + len(self.S)

    def multiset(self) -> tuple[int, ...]:
        """The letter multiset [n] ⊎ S for insertion families."""
        return tuple(sorted(tuple(range(1, self.n + 1)) + self.S))


# ---------------------------------------------------------------------------
# word-family depth-first searches
#
# Shared state machine: placing letter v after last letter `last` in a run led
# by `lead` either continues the run (v >= last) or, when lead <= v < last,
# starts a new run led by v.  Letters below `lead` can never appear again in a
# flattened word, which is what makes the searches small.
# ---------------------------------------------------------------------------


def _replay_flat_prefix(prefix: Sequence[int], minimum: int):
    """State (last, lead, runs) after a forced prefix, or None if not flattened."""
    if not prefix:
        return None if minimum is None else (0, 0, 0)
    if prefix[0] != minimum:
        return None
    last, lead, runs = prefix[0], prefix[0], 1
    for v in prefix[1:]:
        if v >= last:
            last = v
        elif v >= lead:
            last = lead = v
            runs += 1
        else:
            return None
    return last, lead, runs


def _iter_flat_multiset(multiset: Sequence[int], k: int | None = None,
                        prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Flattened arrangements of a fixed multiset, lexicographically.

    The first letter of any flattened word is the multiset minimum, and every
    later letter must be >= the current run's leading value, so the search
    never visits a non-flattened prefix.
    """
    vals = sorted(set(multiset))
    avail = {v: 0 for v in vals}
    for v in multiset:
        avail[v] += 1
    length = len(multiset)
    if length == 0 or len(prefix) > length:
        return
    state = _replay_flat_prefix(prefix, vals[0]) if prefix else None
    if prefix:
        if state is None:
            return
        for v in prefix:
            if avail.get(v, 0) == 0:
                return
            avail[v] -= 1

    word = list(prefix)

    def rec(last: int, lead: int, runs: int) -> Iterator[Word]:
        if len(word) == length:
            if k is None or runs == k:
                yield tuple(word)
            return
        for v in vals:
            if v < lead or avail[v] == 0:
                continue
            new_run = v < last
            if new_run and k is not None and runs + 1 > k:
                continue
            avail[v] -= 1
            word.append(v)
            yield from rec(v, v if new_run else lead, runs + (1 if new_run else 0))
            word.pop()
            avail[v] += 1

    if prefix:
        last, lead, runs = state
        yield from rec(last, lead, runs)
    else:
        v0 = vals[0]
        avail[v0] -= 1
        word.append(v0)
        yield from rec(v0, v0, 1)


def _count_flat_multiset_by_runs(multiset: Sequence[int],
                                 prefix: Sequence[int] = ()) -> dict[int, int]:
    """Run-count histogram of the flattened arrangements of a fixed multiset."""
    vals = sorted(set(multiset))
    avail = {v: 0 for v in vals}
    for v in multiset:
        avail[v] += 1
    length = len(multiset)
    out: dict[int, int] = {}
    if length == 0 or len(prefix) > length:
        return out
    if prefix:
        state = _replay_flat_prefix(prefix, vals[0])
        if state is None:
            return out
        for v in prefix:
            if avail.get(v, 0) == 0:
                return out
            avail[v] -= 1
        start, (last, lead, runs) = len(prefix), state
    else:
        v0 = vals[0]
        avail[v0] -= 1
        start, last, lead, runs = 1, v0, v0, 1

    def rec(placed: int, last: int, lead: int, runs: int) -> None:
        if placed == length:
            out[runs] = out.get(runs, 0) + 1
            return
        for v in vals:
            if v < lead or avail[v] == 0:
                continue
            avail[v] -= 1
            if v < last:
                rec(placed + 1, v, v, runs + 1)
            else:
                rec(placed + 1, v, lead, runs)
            avail[v] += 1

    rec(start, last, lead, runs)
    return out


def _pf_prefix_feasible(cnt: list[int], n: int, rem: int, lead: int) -> bool:
    """Can the prefix still extend to a parking function?

    Needs |{i : w_i <= u}| >= u for every u at the end.  Values below the
    current run lead can never be placed again, so their deficit must already
    be zero; above it, the deficit must fit in the remaining slots.
    """
    c = 0
    for u in range(1, n + 1):
        c += cnt[u]
        d = u - c
        if d > 0 and (u < lead or d > rem):
            return False
    return True


def _iter_flat_pf(n: int, k: int | None = None, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Flattened parking functions of length n, lexicographically."""
    cnt = [0] * (n + 1)
    if len(prefix) > n:
        return
    state = _replay_flat_prefix(prefix, 1) if prefix else None
    if prefix:
        if state is None or any(v > n for v in prefix):
            return
        for v in prefix:
            cnt[v] += 1
        if not _pf_prefix_feasible(cnt, n, n - len(prefix), state[1]):
            return
    word = list(prefix)

    def rec(last: int, lead: int, runs: int) -> Iterator[Word]:
        if len(word) == n:
            if k is None or runs == k:
                yield tuple(word)
            return
        rem = n - len(word) - 1
        for v in range(lead, n + 1):
            new_run = v < last
            if new_run and k is not None and runs + 1 > k:
                continue
            nl = v if new_run else lead
            cnt[v] += 1
            if _pf_prefix_feasible(cnt, n, rem, nl):
                word.append(v)
                yield from rec(v, nl, runs + (1 if new_run else 0))
                word.pop()
            cnt[v] -= 1

    if prefix:
        yield from rec(*state)
    else:
        cnt[1] += 1
        word.append(1)
        yield from rec(1, 1, 1)


def _count_flat_pf_by_runs(n: int, prefix: Sequence[int] = ()) -> dict[int, int]:
    """Run-count histogram of the flattened parking functions of length n."""
    cnt = [0] * (n + 1)
    out: dict[int, int] = {}
    if len(prefix) > n:
        return out
    if prefix:
        state = _replay_flat_prefix(prefix, 1)
        if state is None or any(v > n for v in prefix):
            return out
        for v in prefix:
            cnt[v] += 1
        if not _pf_prefix_feasible(cnt, n, n - len(prefix), state[1]):
            return out
        placed0, (last0, lead0, runs0) = len(prefix), state
    else:
        cnt[1] += 1
        placed0, last0, lead0, runs0 = 1, 1, 1, 1

    feasible = _pf_prefix_feasible

    def rec(placed: int, last: int, lead: int, runs: int) -> None:
        if placed == n:
            out[runs] = out.get(runs, 0) + 1
            return
        rem = n - placed - 1
        for v in range(lead, n + 1):
            new_run = v < last
            nl = v if new_run else lead
            cnt[v] += 1
            if feasible(cnt, n, rem, nl):
                rec(placed + 1, v, nl, runs + (1 if new_run else 0))
            cnt[v] -= 1

    rec(placed0, last0, lead0, runs0)
    return out


def _iter_multiset_perms(multiset: Sequence[int], prefix: Sequence[int] = ()) -> Iterator[Word]:
    """All distinct arrangements of a multiset, lexicographically."""
    vals = sorted(set(multiset))
    avail = {v: 0 for v in vals}
    for v in multiset:
        avail[v] += 1
    if len(prefix) > len(multiset):
        return
    for v in prefix:
        if avail.get(v, 0) == 0:
            return
        avail[v] -= 1
    length = len(multiset)
    word = list(prefix)

    def rec() -> Iterator[Word]:
        if len(word) == length:
            yield tuple(word)
            return
        for v in vals:
            if avail[v] == 0:
                continue
            avail[v] -= 1
            word.append(v)
            yield from rec()
            word.pop()
            avail[v] += 1

    yield from rec()


def _iter_parking_functions(n: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """All parking functions of length n, lexicographically."""
    cnt = [0] * (n + 1)
    if len(prefix) > n:
        return
    for v in prefix:
        if not 1 <= v <= n:
            return
        cnt[v] += 1
    if not _pf_prefix_feasible(cnt, n, n - len(prefix), 1):
        return
    word = list(prefix)

    def rec() -> Iterator[Word]:
        if len(word) == n:
            yield tuple(word)
            return
        rem = n - len(word) - 1
        for v in range(1, n + 1):
            cnt[v] += 1
            if _pf_prefix_feasible(cnt, n, rem, 1):
                word.append(v)
                yield from rec()
                word.pop()
            cnt[v] -= 1

    yield from rec()


# ---------------------------------------------------------------------------
# set partitions via restricted growth strings
# ---------------------------------------------------------------------------


def _iter_rgs(n: int, sep_r: int = 0) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n, lexicographically.

    With ``sep_r`` set, elements 1..r are pinned to blocks 0..r-1, which is
    exactly the first-r-in-distinct-blocks restriction.
    """
    a = [0] * n

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(a)
            return
        if i < sep_r:
            a[i] = i
            yield from rec(i + 1, i)
            return
        for label in range(mx + 2):
            a[i] = label
            yield from rec(i + 1, max(mx, label))

    if n == 0:
        yield ()
        return
    yield from rec(0, -1)


def _rgs_to_partition(rgs: Sequence[int]) -> SetPartition:
    nblocks = max(rgs) + 1 if rgs else 0
    blocks: list[list[int]] = [[] for _ in range(nblocks)]
    for elem, label in enumerate(rgs, start=1):
        blocks[label].append(elem)
    return SetPartition(tuple(tuple(b) for b in blocks), len(rgs))


def iter_set_partitions(n: int, sep_r: int = 0) -> Iterator[SetPartition]:
    """Set partitions of [n] (with 1..sep_r in pairwise distinct blocks), RGS order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if sep_r < 0 or sep_r > n:
        raise ValueError("need 0 <= sep_r <= n")
    for rgs in _iter_rgs(n, sep_r):
        yield _rgs_to_partition(rgs)


# ---------------------------------------------------------------------------
# the public family surface
# ---------------------------------------------------------------------------


def gen_family(spec: FamilySpec) -> Iterator[Word | SetPartition]:
    """Deterministic stream of the family's members, each exactly once.

    Word families come out in lexicographic order; partition families in
    restricted-growth-string order (blocks canonically sorted by minima).
    """
    if spec.family in PARTITION_FAMILIES:
        _check_ceiling(spec.n, "ground set")
        yield from iter_set_partitions(spec.n, spec.r or 0)
        return
    _check_ceiling(spec.object_size, "word length")
    if spec.family == "permutations":
        stream: Iterator[Word] = _iter_multiset_perms(tuple(range(1, spec.n + 1)))
    elif spec.family == "parking_functions":
        stream = _iter_parking_functions(spec.n)
    elif spec.family == "flat_pf":
        yield from _iter_flat_pf(spec.n, spec.k)
        return
    elif spec.family == "s_insertion_pf":
        stream = _iter_multiset_perms(spec.multiset())
    else:  # flat_s_insertion
        yield from _iter_flat_multiset(spec.multiset(), spec.k)
        return
    if spec.k is None:
        yield from stream
    else:
        yield from (w for w in stream if run_count(w) == spec.k)


@lru_cache(maxsize=None)
def _flat_pf_runs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(_count_flat_pf_by_runs(n).items()))


@lru_cache(maxsize=None)
def _flat_multiset_runs(multiset: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(_count_flat_multiset_by_runs(multiset).items()))


def _prefix_classes(spec: FamilySpec) -> list[tuple[int, ...]]:
    """Disjoint length-2 prefix classes covering the family's word stream."""
    if spec.family in ("flat_pf", "flat_s_insertion"):
        letters = range(1, spec.n + 1) if spec.family == "flat_pf" else sorted(set(spec.multiset()))
        return [(1, v) if spec.family == "flat_pf" else (min(letters), v) for v in letters]
    letters = range(1, spec.n + 1) if spec.family != "s_insertion_pf" else sorted(set(spec.multiset()))
    return [(v,) for v in letters]


def _count_prefix_job(args) -> dict[int, int]:
    spec_fields, prefix = args
    spec = FamilySpec(**spec_fields)
    if spec.family == "flat_pf":
        return _count_flat_pf_by_runs(spec.n, prefix)
    if spec.family == "flat_s_insertion":
        return _count_flat_multiset_by_runs(spec.multiset(), prefix)
    if spec.family == "permutations":
        stream: Iterator[Word] = _iter_multiset_perms(tuple(range(1, spec.n + 1)), prefix)
    elif spec.family == "s_insertion_pf":
        stream = _iter_multiset_perms(spec.multiset(), prefix)
    else:
        stream = _iter_parking_functions(spec.n, prefix)
    out: dict[int, int] = {}
    for w in stream:
        kk = run_count(w)
        out[kk] = out.get(kk, 0) + 1
    return out


def count_family_by_runs(spec: FamilySpec, jobs: int = 1) -> dict[int, int]:
    """Run-count histogram {k: count} of a word family.

    With ``jobs > 1`` the candidate space is split into disjoint prefix
    classes counted independently and merged by addition, so the result is
    identical for every worker count.
    """
    if spec.family in PARTITION_FAMILIES:
        raise ValueError("run counts apply to word families only")
    _check_ceiling(spec.object_size, "word length")
    base = FamilySpec(spec.family, spec.n, spec.S)
    if base.object_size <= 2:
        jobs = 1  # shorter than a prefix class; nothing to partition
    if jobs <= 1:
        if base.family == "flat_pf":
            return dict(_flat_pf_runs(base.n))
        if base.family == "flat_s_insertion":
            return dict(_flat_multiset_runs(base.multiset()))
        return _count_prefix_job(
            ({"family": base.family, "n": base.n, "S": base.S}, ())
        )
    fields = {"family": base.family, "n": base.n, "S": base.S}
    merged: dict[int, int] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(
            _count_prefix_job, [(fields, p) for p in _prefix_classes(base)]
        ):
            for kk, c in part.items():
                merged[kk] = merged.get(kk, 0) + c
    return merged


def count_family(spec: FamilySpec, jobs: int = 1) -> int:
    """Cardinality of the family; with spec.k set, only members with k runs."""
    if spec.family in PARTITION_FAMILIES:
        _check_ceiling(spec.n, "ground set")
        return sum(1 for _ in iter_set_partitions(spec.n, spec.r or 0))
    by_runs = count_family_by_runs(spec, jobs)
    if spec.k is None:
        return sum(by_runs.values())
    return by_runs.get(spec.k, 0)


# ---------------------------------------------------------------------------
# partition statistics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _partition_big_block_counts(ground: int, sep_r: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in iter_set_partitions(ground, sep_r):
        b = p.big_block_count()
        out[b] = out.get(b, 0) + 1
    return tuple(sorted(out.items()))


def restricted_partition_counts(ground: int, sep_r: int = 0) -> dict[int, int]:
    """Histogram {big blocks: count} over partitions of [ground] with 1..sep_r separated."""
    _check_ceiling(ground, "ground set")
    return dict(_partition_big_block_counts(ground, sep_r))


def count_T(n: int, k: int) -> int:
    """Set partitions of [n] with exactly k blocks of size >= 2, by exhaustion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    return restricted_partition_counts(n).get(k, 0)


def count_Bkr(n: int, r: int, k: int) -> int:
    """The (r,k)-Bell triangle value B_k(n,r), by exhaustive generation.

    Indexed like the published triangles: row n, column k holds the number of
    set partitions of [n-1+r] with 1..r in pairwise distinct blocks and
    exactly k-1 blocks of size >= 2.  Equivalently (and verified against the
    word enumeration) it is the number of flattened parking-function words
    over [n] ⊎ {1}^r with exactly k runs.  Column k=0 is empty.
    """
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 0
    return restricted_partition_counts(n - 1 + r, r).get(k - 1, 0)


# ---------------------------------------------------------------------------
# run-separation statistics
# ---------------------------------------------------------------------------


def _separation_ok(w: Word, s: int, mode: str) -> bool:
    ones_runs: list[int] = []
    val_run: dict[int, int] = {}
    ridx = 0
    for i, a in enumerate(w):
        if i and w[i - 1] > a:
            ridx += 1
        if a == 1:
            ones_runs.append(ridx)
        elif a <= s:
            val_run[a] = ridx
    vals = list(val_run.values())
    if len(set(vals)) != len(vals):
        return False
    ones_set = set(ones_runs)
    if mode == "ones_same_run":
        return len(ones_set) == 1 and not ones_set.intersection(vals)
    if mode == "ones_separate_runs":
        return len(ones_set) == len(ones_runs) and not ones_set.intersection(vals)
    if mode == "ones_any_composition":
        return not ones_set.intersection(vals)
    raise ValueError(f"unknown separation mode {mode!r}")


def count_separated(s: int, r: int, n: int, k: int, mode: str) -> int:
    """Members of flat_k(PF_n(1_r)) whose first s values are run-separated.

    ``n`` is the size of the underlying permutation, so words have length
    ``n + r`` and carry ``r + 1`` ones.  ``mode`` picks one of the three
    candidate readings of how the ones interact with the separation: all in
    one run, all in pairwise distinct runs, or split arbitrarily as long as no
    run mixes a one with one of the values 2..s.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if r < 0:
        raise ValueError("r must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    if s > n:
        raise ValueError(f"s={s} exceeds the base size n={n}")
    if mode not in SEPARATION_MODES:
        raise ValueError(f"unknown separation mode {mode!r}")
    _check_ceiling(n + r, "word length")
    multiset = tuple(sorted(tuple(range(1, n + 1)) + (1,) * r))
    return sum(1 for w in _iter_flat_multiset(multiset, k) if _separation_ok(w, s, mode))
