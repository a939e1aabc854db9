"""Words over positive integers: runs, flattenedness, and the parking property.

A word is a tuple of positive integers.  Parking functions, permutations, and
insertion words are all carried by the same representation; predicates validate
letters lazily so intermediate values produced by the bijection maps can be
held without constructor ceremony.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

Word = tuple[int, ...]


class RunDecomposition(NamedTuple):
    """Maximal weakly increasing segments of a word, plus their first letters."""

    runs: tuple[Word, ...]
    leading_values: tuple[int, ...]

    @property
    def run_count(self) -> int:
        return len(self.runs)


def _check_word(w: Sequence[int]) -> None:
    if len(w) == 0:
        raise ValueError("empty word")
    for a in w:
        if a < 1:
            raise ValueError(f"letters must be positive integers, got {a}")


def parse_word(text: str) -> Word:
    """Parse a word from its text form.

    Accepts the compact digit-string form ("14232") and the comma-separated
    form ("1,4,2,3,2"); the latter is required once letters exceed 9.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty word text")
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    if not text.isdigit():
        raise ValueError(f"not a word: {text!r}")
    return tuple(int(ch) for ch in text)


def format_word(w: Sequence[int]) -> str:
    """Render a word as a digit string when possible, else comma-separated."""
    _check_word(w)
    if all(a <= 9 for a in w):
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def is_parking_function(w: Sequence[int], n: int | None = None) -> bool:
    """True iff the weakly increasing rearrangement w' satisfies w'_i <= i.

    ``n``, when given, must equal ``len(w)``; it exists so callers can state
    the intended length explicitly.
    """
    _check_word(w)
    if n is not None and n != len(w):
        raise ValueError(f"length mismatch: word has {len(w)} letters, n={n}")
    return all(a <= i for i, a in enumerate(sorted(w), start=1))


def run_decomposition(w: Sequence[int]) -> RunDecomposition:
    """Split a word into its maximal weak-ascent runs.

    A run ends exactly where a descent (a_i > a_{i+1}) occurs, so the
    segmentation is unique.  For permutations this coincides with the
    strict-ascent notion of runs.
    """
    _check_word(w)
    runs: list[Word] = []
    start = 0
    for i in range(1, len(w)):
        if w[i - 1] > w[i]:
            runs.append(tuple(w[start:i]))
            start = i
    runs.append(tuple(w[start:]))
    return RunDecomposition(tuple(runs), tuple(r[0] for r in runs))


def run_count(w: Sequence[int]) -> int:
    """Number of maximal weak-ascent runs; counted without materializing them."""
    _check_word(w)
    return 1 + sum(1 for i in range(1, len(w)) if w[i - 1] > w[i])


def is_flattened(w: Sequence[int]) -> bool:
    """True iff the run leading values are in weakly increasing order."""
    _check_word(w)
    prev_lead = w[0]
    for i in range(1, len(w)):
        if w[i - 1] > w[i]:
            if w[i] < prev_lead:
                return False
            prev_lead = w[i]
    return True


def max_runs_bound(n: int) -> int:
    """The largest possible run count of a flattened parking function of length n.

    Equals ceil(n/2): every run except possibly the last must have length at
    least two, since a length-one run in the middle would force a leading-value
    decrease.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) // 2
