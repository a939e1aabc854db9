"""Executable forward/inverse maps for the insertion-family bijections.

Every map validates its domain eagerly and raises ``DomainError`` outside it;
``verify_bijection`` then machine-checks bijectivity, inverse composition,
and statistic preservation over exhaustively enumerated domains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .families import (
    FamilySpec,
    SetPartition,
    format_partition,
    gen_family,
    iter_set_partitions,
)
from .words import Word, format_word, is_flattened, is_parking_function, run_count


class DomainError(ValueError):
    """The argument lies outside the bijection's domain."""


def _multiset(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(w))


def _expect_flat_insertion_word(w: Sequence[int], n: int, S: Sequence[int], what: str) -> None:
    expected = tuple(sorted(tuple(range(1, n + 1)) + tuple(S)))
    if _multiset(w) != expected:
        raise DomainError(f"{what}: letter multiset {_multiset(w)} != [n] ⊎ S = {expected}")
    if not is_flattened(w):
        raise DomainError(f"{what}: {format_word(w)} is not flattened")
    if not is_parking_function(w):
        raise DomainError(f"{what}: {format_word(w)} is not a parking function")


# ---------------------------------------------------------------------------
# global decrement: flat(PF_n(S)) -> flat(PF_{n-1}(S')) with S' = {s-1} ∪ {1}
# ---------------------------------------------------------------------------


def shifted_multiset(S: Sequence[int]) -> tuple[int, ...]:
    """The companion multiset: every value decremented, plus one extra 1."""
    return tuple(sorted([v - 1 for v in S] + [1]))


def shift_down(w: Sequence[int], n: int, S: Sequence[int]) -> Word:
    """Keep the first letter, decrement the rest.

    Domain: flattened insertion words over [n] ⊎ S with S avoiding the value 1;
    descents are preserved verbatim so the run structure is untouched.
    """
    S = tuple(sorted(S))
    if not S or any(v < 2 or v > n for v in S):
        raise DomainError(f"S must be a non-empty multiset over [2..{n}], got {S}")
    _expect_flat_insertion_word(w, n, S, "shift_down")
    return (w[0],) + tuple(a - 1 for a in w[1:])


def shift_up(w: Sequence[int], n: int, S: Sequence[int]) -> Word:
    """Inverse of :func:`shift_down`; takes a word over [n-1] ⊎ S' back up."""
    S = tuple(sorted(S))
    if not S or any(v < 2 or v > n for v in S):
        raise DomainError(f"S must be a non-empty multiset over [2..{n}], got {S}")
    _expect_flat_insertion_word(w, n - 1, shifted_multiset(S), "shift_up")
    return (w[0],) + tuple(a + 1 for a in w[1:])


# ---------------------------------------------------------------------------
# single-letter rewrites between adjacent insertion values
# ---------------------------------------------------------------------------


def _three_case_rewrite(w: Sequence[int], lo: int, hi: int, forward: bool, what: str) -> Word:
    """Rewrite one tracked letter according to the three position patterns.

    Tracked letters are the occurrences of ``lo`` and ``hi`` (three in total).
    Going forward one ``lo`` becomes ``hi``; backward one ``hi`` becomes
    ``lo``.  Which occurrence moves depends only on the pattern, which is what
    makes the two directions compose to the identity.
    """
    pos = [i for i, a in enumerate(w) if a == lo or a == hi]
    if len(pos) != 3:
        raise DomainError(f"{what}: expected three occurrences of {{{lo},{hi}}} in {format_word(w)}")
    pat = tuple(w[i] for i in pos)
    if forward:
        which = {(lo, lo, hi): 1, (lo, hi, lo): 0, (hi, lo, lo): 2}.get(pat)
        new = hi
    else:
        which = {(lo, hi, hi): 1, (hi, hi, lo): 0, (hi, lo, hi): 2}.get(pat)
        new = lo
    if which is None:
        raise DomainError(f"{what}: pattern {pat} does not match any rewrite case")
    out = list(w)
    out[pos[which]] = new
    return tuple(out)


def swap_top(w: Sequence[int], n: int, direction: str) -> Word:
    """Exchange the doubled top value n-1 with n (or back).

    Domain: flattened insertion words over [n] ⊎ S ⊎ {n-1} (forward) or
    [n] ⊎ S ⊎ {n} (backward) with S over [n-2].  Because the tracked values
    are extreme, the rewrite never disturbs runs or leading values.
    """
    if direction not in ("n_minus_1_to_n", "n_to_n_minus_1"):
        raise DomainError(f"unknown direction {direction!r}")
    forward = direction == "n_minus_1_to_n"
    if n < 2:
        raise DomainError("swap_top needs n >= 2")
    counts = {v: 0 for v in range(1, n + 1)}
    for a in w:
        if not 1 <= a <= n:
            raise DomainError(f"swap_top: letter {a} outside [1..{n}]")
        counts[a] += 1
    want_lo, want_hi = (2, 1) if forward else (1, 2)
    if counts[n - 1] != want_lo or counts[n] != want_hi:
        raise DomainError(
            f"swap_top ({direction}): need {want_lo} x {n - 1} and {want_hi} x {n} in {format_word(w)}"
        )
    if any(counts[v] < 1 for v in range(1, n + 1)):
        raise DomainError(f"swap_top: {format_word(w)} does not contain all of [1..{n}]")
    if not is_flattened(w) or not is_parking_function(w):
        raise DomainError(f"swap_top: {format_word(w)} is not a flattened parking function")
    return _three_case_rewrite(w, n - 1, n, forward, "swap_top")


def two_run_shift(w: Sequence[int], n: int, ell: int, direction: str) -> Word:
    """Exchange a doubled insertion value ell-1 with ell on two-run words.

    Domain: flat_2(PF_n({ell-1})) going up, flat_2(PF_n({ell})) going down,
    with 3 <= ell <= n.  (At ell = 2 the two families are not even
    equinumerous and case 2 of the rewrite can destroy flattenedness, so that
    value is rejected.)  Exactly two runs are required: with three or more
    runs the rewrite may break flattenedness.
    """
    if direction not in ("up", "down"):
        raise DomainError(f"unknown direction {direction!r}")
    if not 3 <= ell <= n:
        raise DomainError(f"two_run_shift needs 3 <= ell <= n, got ell={ell}, n={n}")
    inserted = ell - 1 if direction == "up" else ell
    _expect_flat_insertion_word(w, n, (inserted,), "two_run_shift")
    if run_count(w) != 2:
        raise DomainError(f"two_run_shift: {format_word(w)} must have exactly two runs")
    return _three_case_rewrite(w, ell - 1, ell, direction == "up", "two_run_shift")


# ---------------------------------------------------------------------------
# cycling maps between set partitions and one-insertion words
# ---------------------------------------------------------------------------


def _check_partition(p: SetPartition) -> None:
    seen = sorted(x for b in p.blocks for x in b)
    if seen != list(range(1, p.n + 1)):
        raise DomainError(f"blocks do not partition [{p.n}]")
    if any(len(b) == 0 or list(b) != sorted(b) for b in p.blocks):
        raise DomainError("blocks must be non-empty sorted tuples")
    mins = [b[0] for b in p.blocks]
    if mins != sorted(mins):
        raise DomainError("blocks must be ordered by their minima")


def partition_to_flat(p: SetPartition) -> Word:
    """Cycle each block and concatenate behind a leading 1.

    A block {b_1 < ... < b_m} contributes the subword b_2 ... b_m b_1, so each
    block of size >= 2 contributes exactly one descent; the image is a
    one-insertion flattened word over [n] ⊎ {1} with (big blocks) + 1 runs.
    """
    _check_partition(p)
    word = [1]
    for b in p.blocks:
        word.extend(b[1:])
        word.append(b[0])
    return tuple(word)


def flat_to_partition(w: Sequence[int]) -> SetPartition:
    """Inverse of :func:`partition_to_flat`, by un-cycling greedily.

    After the leading 1, each block's subword ends at the smallest value not
    yet assigned (the block minimum), preceded by the rest of the block in
    increasing order.
    """
    n = len(w) - 1
    if n < 1:
        raise DomainError("word too short")
    _expect_flat_insertion_word(w, n, (1,), "flat_to_partition")
    if w[0] != 1:
        raise DomainError("word must start with the prepended 1")
    u = list(w[1:])
    remaining = set(range(1, n + 1))
    blocks: list[tuple[int, ...]] = []
    i = 0
    while i < len(u):
        m = min(remaining)
        try:
            j = u.index(m, i)
        except ValueError as exc:
            raise DomainError(f"expected block minimum {m} after position {i}") from exc
        rest = u[i:j]
        if any(x <= m for x in rest) or rest != sorted(rest) or len(set(rest)) != len(rest):
            raise DomainError(f"segment {rest} is not an increasing block tail above {m}")
        blocks.append((m, *rest))
        remaining.difference_update(blocks[-1])
        i = j + 1
    return SetPartition(tuple(blocks), n)


def rpartition_to_flat(p: SetPartition, r: int) -> Word:
    """Cycling map for partitions with 1..r in distinct blocks.

    The partition of [n+r] is cycled and concatenated behind a leading 1, the
    values 1..r all collapse to 1, and everything above r drops by r-1; the
    image is a flattened word over [n+1] ⊎ {1}^r whose run count exceeds the
    big-block count by one.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    _check_partition(p)
    if p.n < r:
        raise DomainError(f"ground set [{p.n}] too small for r={r}")
    for i in range(1, r + 1):
        block = next(b for b in p.blocks if i in b)
        if block[0] != i or sum(1 for v in block if v <= r) != 1:
            raise DomainError(f"values 1..{r} must lie in pairwise distinct blocks")
    base = partition_to_flat(p)
    return tuple(1 if a <= r else a - r + 1 for a in base)


def rflat_to_partition(w: Sequence[int], r: int) -> SetPartition:
    """Inverse of :func:`rpartition_to_flat`.

    Values >= 2 are lifted by r-1, the r+1 ones are relabelled 1,1,2,...,r
    from left to right, and the result is un-cycled like the r = 1 case.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    m = len(w) - 1 - r  # image of PF_{m+1}(1_r) words: length (m+1)+r
    if m < 0:
        raise DomainError("word too short")
    _expect_flat_insertion_word(w, m + 1, (1,) * r, "rflat_to_partition")
    lifted = [a + r - 1 if a >= 2 else a for a in w]
    labels = iter([1, 1] + list(range(2, r + 1)))
    relabelled = [next(labels) if a == 1 else a for a in lifted]
    p = flat_to_partition(tuple(relabelled))
    for i in range(1, r + 1):
        block = next(b for b in p.blocks if i in b)
        if sum(1 for v in block if v <= r) != 1:
            raise DomainError(f"values 1..{r} do not separate in {format_word(w)}")
    return p


# ---------------------------------------------------------------------------
# machine verification
# ---------------------------------------------------------------------------


@dataclass
class BijectionReport:
    """Outcome of an exhaustive bijectivity check; all-true booleans on success."""

    name: str
    params: dict
    domain_size: int = 0
    codomain_size: int = 0
    injective: bool = True
    surjective: bool = True
    image_in_codomain: bool = True
    inverse_composes: bool = True
    statistic_preserved: bool = True
    counterexamples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.domain_size == self.codomain_size
                and self.injective and self.surjective and self.image_in_codomain
                and self.inverse_composes and self.statistic_preserved)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "domain_size": self.domain_size,
            "codomain_size": self.codomain_size,
            "injective": self.injective,
            "surjective": self.surjective,
            "image_in_codomain": self.image_in_codomain,
            "inverse_composes": self.inverse_composes,
            "statistic_preserved": self.statistic_preserved,
            "ok": self.ok,
            "counterexamples": list(self.counterexamples),
        }


BIJECTION_NAMES = ("shift_down", "swap_top", "two_run_shift",
                   "partition_to_flat", "rpartition_to_flat")

_MAX_COUNTEREXAMPLES = 5


def _fmt(x) -> str:
    return format_partition(x) if isinstance(x, SetPartition) else format_word(x)


def _run_check(report: BijectionReport, domain: list, codomain: list,
               forward: Callable, inverse: Callable,
               statistic: Callable) -> BijectionReport:
    report.domain_size = len(domain)
    report.codomain_size = len(codomain)
    codomain_set = set(codomain)
    seen: dict = {}

    def note(msg: str) -> None:
        if len(report.counterexamples) < _MAX_COUNTEREXAMPLES:
            report.counterexamples.append(msg)

    for x in domain:
        try:
            y = forward(x)
        except DomainError as exc:
            report.image_in_codomain = False
            note(f"{_fmt(x)}: forward map failed ({exc})")
            continue
        if y not in codomain_set:
            report.image_in_codomain = False
            note(f"{_fmt(x)} -> {_fmt(y)} lies outside the codomain")
        if y in seen:
            report.injective = False
            note(f"{_fmt(seen[y])} and {_fmt(x)} both map to {_fmt(y)}")
        seen[y] = x
        try:
            back = inverse(y)
        except DomainError as exc:
            report.inverse_composes = False
            note(f"{_fmt(y)}: inverse map failed ({exc})")
            back = None
        if back is not None and back != x:
            report.inverse_composes = False
            note(f"round trip {_fmt(x)} -> {_fmt(y)} -> {_fmt(back)}")
        if not statistic(x, y):
            report.statistic_preserved = False
            note(f"statistic not preserved on {_fmt(x)} -> {_fmt(y)}")
    if set(seen) != codomain_set:
        report.surjective = False
        missing = sorted(codomain_set - set(seen))
        if missing:
            note(f"not hit: {_fmt(missing[0])}")
    return report


def verify_bijection(name: str, n: int, r: int | None = None,
                     S: Sequence[int] | None = None, ell: int | None = None) -> BijectionReport:
    """Exhaustively check one named bijection on its enumerated domain.

    ``rpartition_to_flat`` takes ``n`` as the triangle row index, i.e. the
    domain is the partitions of [n-1+r] with 1..r separated and the codomain
    the flattened words over [n] ⊎ {1}^r, matching ``count_Bkr(n, r, k)``.
    """
    params: dict = {"n": n}
    if name == "shift_down":
        S = tuple(sorted(S or ()))
        params["S"] = S
        domain = list(gen_family(FamilySpec("flat_s_insertion", n, S)))
        codomain = list(gen_family(FamilySpec("flat_s_insertion", n - 1, shifted_multiset(S))))
        report = BijectionReport(name, params)
        return _run_check(report, domain, codomain,
                          lambda w: shift_down(w, n, S),
                          lambda w: shift_up(w, n, S),
                          lambda x, y: run_count(x) == run_count(y))
    if name == "swap_top":
        S = tuple(sorted(S or ()))
        params["S"] = S
        domain = list(gen_family(FamilySpec("flat_s_insertion", n, tuple(sorted(S + (n - 1,))))))
        codomain = list(gen_family(FamilySpec("flat_s_insertion", n, tuple(sorted(S + (n,))))))
        report = BijectionReport(name, params)
        return _run_check(report, domain, codomain,
                          lambda w: swap_top(w, n, "n_minus_1_to_n"),
                          lambda w: swap_top(w, n, "n_to_n_minus_1"),
                          lambda x, y: run_count(x) == run_count(y))
    if name == "two_run_shift":
        if ell is None:
            raise ValueError("two_run_shift needs ell")
        params["ell"] = ell
        domain = list(gen_family(FamilySpec("flat_s_insertion", n, (ell - 1,), k=2)))
        codomain = list(gen_family(FamilySpec("flat_s_insertion", n, (ell,), k=2)))
        report = BijectionReport(name, params)
        return _run_check(report, domain, codomain,
                          lambda w: two_run_shift(w, n, ell, "up"),
                          lambda w: two_run_shift(w, n, ell, "down"),
                          lambda x, y: run_count(x) == run_count(y))
    if name == "partition_to_flat":
        domain = list(iter_set_partitions(n))
        codomain = list(gen_family(FamilySpec("flat_s_insertion", n, (1,))))
        report = BijectionReport(name, params)
        return _run_check(report, domain, codomain,
                          partition_to_flat, flat_to_partition,
                          lambda p, w: run_count(w) == 1 + p.big_block_count())
    if name == "rpartition_to_flat":
        if r is None:
            raise ValueError("rpartition_to_flat needs r")
        params["r"] = r
        domain = list(iter_set_partitions(n - 1 + r, r))
        codomain = list(gen_family(FamilySpec("flat_s_insertion", n, (1,) * r)))
        report = BijectionReport(name, params)
        return _run_check(report, domain, codomain,
                          lambda p: rpartition_to_flat(p, r),
                          lambda w: rflat_to_partition(w, r),
                          lambda p, w: run_count(w) == 1 + p.big_block_count())
    raise ValueError(f"unknown bijection {name!r}")
