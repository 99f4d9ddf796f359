"""Stirling numbers of the first kind, their B-analogues and chamber counts.

Everything here is exact: Python integers and ``fractions.Fraction`` only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

DEFAULT_MAX_N = 600


class ConeType(enum.Enum):
    """Type of the underlying reflection arrangement."""

    A = "A"
    B = "B"

    @property
    def sigma(self) -> Fraction:
        return Fraction(1) if self is ConeType.A else Fraction(1, 2)

    @property
    def sigma_float(self) -> float:
        return 1.0 if self is ConeType.A else 0.5

    @classmethod
    def parse(cls, value: "ConeType | str") -> "ConeType":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown cone type {value!r}, expected 'A' or 'B'") from None

    def total_mass(self, n: int) -> int:
        """``n!/sigma**n``: the value of the defining polynomial at t = 1."""
        f = math.factorial(n)
        return f if self is ConeType.A else f << n

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class StirlingTable:
    """Triangle ``entries[n][k]`` for ``0 <= k <= n <= max_n``.

    Rows are tuples, so a table can be shared freely between threads.
    """

    variant: ConeType
    max_n: int
    entries: tuple[tuple[int, ...], ...]

    def __call__(self, n: int, k: int) -> int:
        # out-of-range k is zero by convention; out-of-range n is a caller bug
        if not 0 <= n <= self.max_n:
            raise IndexError(f"n={n} outside table range 0..{self.max_n}")
        if k < 0 or k > n:
            return 0
        return self.entries[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        if not 0 <= n <= self.max_n:
            raise IndexError(f"n={n} outside table range 0..{self.max_n}")
        return self.entries[n]

    def odd_tail(self, n: int, m: int) -> int:
        """Sum of ``entries[n][m + l]`` over odd ``l >= 1``."""
        row = self.row(n)
        start = m + 1
        if start < 0:
            # skip negative indices while keeping the parity of the offset
            start += 2 * ((-start + 1) // 2)
        return sum(row[start::2])


@dataclass(frozen=True)
class ChamberCount:
    n: int
    d: int
    variant: ConeType
    value: int


def build_stirling_table(variant: ConeType | str, max_n: int = DEFAULT_MAX_N) -> StirlingTable:
    """Build the triangle row by row from the three-term recurrence.

    Type A: ``A(n,k) = A(n-1,k-1) + (n-1) A(n-1,k)``;
    type B: ``B(n,k) = B(n-1,k-1) + (2n-1) B(n-1,k)``; both start from 1 at n=0.
    """
    variant = ConeType.parse(variant)
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(1, max_n + 1):
        mult = n - 1 if variant is ConeType.A else 2 * n - 1
        prev = rows[-1]
        new = [0] * (n + 1)
        new[0] = mult * prev[0]
        for k in range(1, n):
            new[k] = prev[k - 1] + mult * prev[k]
        new[n] = prev[n - 1]
        rows.append(tuple(new))
    return StirlingTable(variant, max_n, tuple(rows))


@lru_cache(maxsize=None)
def _cached_table(variant: ConeType, max_n: int) -> StirlingTable:
    return build_stirling_table(variant, max_n)


def stirling_table(variant: ConeType | str, n: int = DEFAULT_MAX_N) -> StirlingTable:
    """Shared table covering at least rows ``0..n``."""
    variant = ConeType.parse(variant)
    return _cached_table(variant, max(n, DEFAULT_MAX_N))


def _check_range(table: StirlingTable, n: int, d: int) -> None:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d > n:
        raise ValueError(f"d={d} exceeds n={n}")
    if n > table.max_n:
        raise ValueError(f"n={n} exceeds table max_n={table.max_n}")


def chamber_count_value(table: StirlingTable, n: int, d: int) -> int:
    """``D(n, d)`` as a plain int, with ``D(n, 0) = 0``."""
    if d == 0:
        return 0
    return 2 * table.odd_tail(n, n - d)


def chamber_count(table: StirlingTable, n: int, d: int) -> ChamberCount:
    """Number of cones in the Weyl tessellation, ``2 * sum_{l odd} T(n, n-d+l)``."""
    _check_range(table, n, d)
    return ChamberCount(n, d, table.variant, chamber_count_value(table, n, d))


def parity_sums(table: StirlingTable, n: int) -> tuple[int, int]:
    """Even- and odd-index sums of row ``n``; both equal ``n!/(2 sigma^n)`` for n >= 2."""
    if n < 2:
        raise ValueError(f"parity identity needs n >= 2, got {n}")
    row = table.row(n)
    return sum(row[0::2]), sum(row[1::2])
