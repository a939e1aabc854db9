"""Truncated bivariate series over exact rationals, for the closed-form check.

The disputed identity equates the exponential generating function of the
run-refined flattened-partition counts with x·exp(x(e^y - 1) + y(1 - x)).
Both sides are expanded here with ``fractions.Fraction`` coefficients so a
mismatch, if any, would be a proven inequality rather than a rounding
artifact; the comparison's verdict is an output, not an assumption.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .recursions import flat_count


@dataclass(frozen=True)
class BivariateSeries:
    """A polynomial-sized window of a series in x (runs) and y (length).

    Coefficients are exact rationals indexed by (x power, y power); indices
    outside the truncation window are discarded by every operation.
    """

    coefficients: tuple[tuple[tuple[int, int], Fraction], ...]
    truncation: tuple[int, int]

    @staticmethod
    def from_dict(coeffs: dict[tuple[int, int], Fraction], truncation: tuple[int, int]) -> "BivariateSeries":
        k_max, n_max = truncation
        kept = {idx: Fraction(c) for idx, c in coeffs.items()
                if c != 0 and 0 <= idx[0] <= k_max and 0 <= idx[1] <= n_max}
        return BivariateSeries(tuple(sorted(kept.items())), truncation)

    @staticmethod
    def zero(truncation: tuple[int, int]) -> "BivariateSeries":
        return BivariateSeries.from_dict({}, truncation)

    @staticmethod
    def constant(value, truncation: tuple[int, int]) -> "BivariateSeries":
        return BivariateSeries.from_dict({(0, 0): Fraction(value)}, truncation)

    @staticmethod
    def monomial(k: int, n: int, truncation: tuple[int, int], value=1) -> "BivariateSeries":
        return BivariateSeries.from_dict({(k, n): Fraction(value)}, truncation)

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coefficients)

    def coefficient(self, k: int, n: int) -> Fraction:
        return self.as_dict().get((k, n), Fraction(0))

    def _binary(self, other, op) -> "BivariateSeries":
        if self.truncation != other.truncation:
            raise ValueError("truncation mismatch")
        out = self.as_dict()
        for idx, c in other.coefficients:
            out[idx] = op(out.get(idx, Fraction(0)), c)
        return BivariateSeries.from_dict(out, self.truncation)

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries.from_dict({idx: -c for idx, c in self.coefficients}, self.truncation)

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        if self.truncation != other.truncation:
            raise ValueError("truncation mismatch")
        k_max, n_max = self.truncation
        out: dict[tuple[int, int], Fraction] = {}
        for (k1, n1), c1 in self.coefficients:
            for (k2, n2), c2 in other.coefficients:
                k, n = k1 + k2, n1 + n2
                if k <= k_max and n <= n_max:
                    idx = (k, n)
                    out[idx] = out.get(idx, Fraction(0)) + c1 * c2
        return BivariateSeries.from_dict(out, self.truncation)

    def scaled(self, value) -> "BivariateSeries":
        f = Fraction(value)
        return BivariateSeries.from_dict({idx: c * f for idx, c in self.coefficients}, self.truncation)


def series_exp(s: BivariateSeries) -> BivariateSeries:
    """exp of a series with zero constant term, exact to the truncation.

    Summing s^m / m! terminates because every monomial of s has total degree
    at least one, so powers beyond k_max + n_max vanish inside the window.
    """
    if s.coefficient(0, 0) != 0:
        raise ValueError("series_exp requires a zero constant term")
    k_max, n_max = s.truncation
    result = BivariateSeries.constant(1, s.truncation)
    term = BivariateSeries.constant(1, s.truncation)
    for m in range(1, k_max + n_max + 1):
        term = (term * s).scaled(Fraction(1, m))
        result = result + term
    return result


def exp_y_minus_one(truncation: tuple[int, int]) -> BivariateSeries:
    """e^y - 1 to the truncation."""
    _, n_max = truncation
    return BivariateSeries.from_dict(
        {(0, n): Fraction(1, factorial(n)) for n in range(1, n_max + 1)}, truncation
    )


def claimed_closed_form(k_max: int, n_max: int) -> BivariateSeries:
    """x · exp(x(e^y - 1) + y(1 - x)), expanded exactly."""
    if k_max < 1 or n_max < 0:
        raise ValueError("need k_max >= 1 and n_max >= 0")
    trunc = (k_max, n_max)
    x = BivariateSeries.monomial(1, 0, trunc)
    y = BivariateSeries.monomial(0, 1, trunc)
    exponent = x * exp_y_minus_one(trunc) + y - y * x
    return x * series_exp(exponent)


def reference_series(k_max: int, n_max: int) -> BivariateSeries:
    """Sum of f_{n+1,k} x^k y^n / n! over the window, from the enumeration oracle."""
    trunc = (k_max, n_max)
    coeffs = {
        (k, n): Fraction(flat_count(n + 1, k), factorial(n))
        for n in range(n_max + 1) for k in range(1, k_max + 1)
    }
    return BivariateSeries.from_dict(coeffs, trunc)


@dataclass
class GfComparison:
    """Per-coefficient comparison grid between the closed form and the counts."""

    k_max: int
    n_max: int
    cells: dict[tuple[int, int], tuple[Fraction, Fraction]]

    def equal_at(self, k: int, n: int) -> bool:
        lhs, rhs = self.cells[(k, n)]
        return lhs == rhs

    @property
    def disagreements(self) -> list[tuple[int, int]]:
        return sorted(idx for idx in self.cells if not self.equal_at(*idx))

    @property
    def all_equal(self) -> bool:
        return not self.disagreements

    @property
    def verdict(self) -> str:
        total = len(self.cells)
        if self.all_equal:
            return (f"all {total} coefficients agree: the closed form matches the "
                    f"enumerated counts on this window")
        bad = self.disagreements
        k, n = bad[0]
        lhs, rhs = self.cells[(k, n)]
        return (f"{len(bad)} of {total} coefficients disagree; first at "
                f"x^{k} y^{n}: closed form {lhs}, counts {rhs}")

    def text_grid(self) -> list[str]:
        lines = ["cell (k, n): closed-form vs count coefficient of x^k y^n/n!-normalized"]
        header = "n\\k " + " ".join(f"{k:>5d}" for k in range(1, self.k_max + 1))
        lines.append(header)
        for n in range(self.n_max + 1):
            marks = []
            for k in range(1, self.k_max + 1):
                marks.append("   ok" if self.equal_at(k, n) else " DIFF")
            lines.append(f"{n:>3d} " + " ".join(marks))
        lines.append("verdict: " + self.verdict)
        return lines

    def to_json(self) -> str:
        payload = {
            "k_max": self.k_max,
            "n_max": self.n_max,
            "cells": [
                {
                    "k": k,
                    "n": n,
                    "closed_form": str(self.cells[(k, n)][0]),
                    "counts": str(self.cells[(k, n)][1]),
                    "equal": self.equal_at(k, n),
                }
                for (k, n) in sorted(self.cells)
            ],
            "all_equal": self.all_equal,
            "verdict": self.verdict,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def compare_gf(n_max: int, k_max: int) -> GfComparison:
    """Compare the claimed closed form against brute-force counts, cell by cell."""
    lhs = claimed_closed_form(k_max, n_max)
    rhs = reference_series(k_max, n_max)
    cells = {
        (k, n): (lhs.coefficient(k, n), rhs.coefficient(k, n))
        for n in range(n_max + 1) for k in range(1, k_max + 1)
    }
    return GfComparison(k_max, n_max, cells)
