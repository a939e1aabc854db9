"""Classical reference sequences and their export formats.

Everything is computed, never hard-coded; the identities tying these numbers
to the flattened-family counts are asserted by the test suite, not assumed
here.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

from .families import count_Bkr, restricted_partition_counts


def catalan(n: int) -> int:
    """C_n = binom(2n, n) / (n + 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(2 * n, n) // (n + 1)


def bell(n: int) -> int:
    """Number of set partitions of [n], via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def r_bell(n: int, r: int) -> int:
    """Row sum of the (r,k)-Bell triangle: sum over k of count_Bkr(n, r, k).

    Under that triangle's indexing this is the number of set partitions of
    [n-1+r] with 1..r in pairwise distinct blocks, equivalently the number of
    flattened parking-function words over [n] ⊎ {1}^r.
    """
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    return sum(restricted_partition_counts(n - 1 + r, r).values())


def eulerian_one_descent(n: int) -> int:
    """Permutations of [n] with exactly one descent: 2^n - n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2 ** n - n - 1


def rk_bell_table(n_max: int, r: int) -> dict[tuple[int, int], int]:
    """The B_k(n, r) triangle for n, k in [1..n_max], as a dense index map."""
    return {(n, k): count_Bkr(n, r, k)
            for n in range(1, n_max + 1) for k in range(1, n_max + 1)}


class SequenceTable:
    """A named map from index tuples to counts, exportable as b-file or CSV."""

    def __init__(self, name: str, values: Mapping[tuple[int, ...], int] | Mapping[int, int]):
        self.name = name
        self.values: dict[tuple[int, ...], int] = {}
        for key, v in values.items():
            tup = key if isinstance(key, tuple) else (key,)
            self.values[tup] = v

    def _sorted_items(self) -> Iterable[tuple[tuple[int, ...], int]]:
        return sorted(self.values.items())

    def bfile_lines(self) -> list[str]:
        """One ``index value`` line per entry, indices space-separated."""
        return [" ".join(str(i) for i in key) + f" {v}" for key, v in self._sorted_items()]

    def csv_lines(self, key_names: tuple[str, ...] | None = None) -> list[str]:
        width = len(next(iter(self.values))) if self.values else 1
        header = ",".join(key_names or tuple(f"i{j}" for j in range(1, width + 1))) + ",value"
        rows = [",".join(str(i) for i in key) + f",{v}" for key, v in self._sorted_items()]
        return [header] + rows
