"""Degree splittings ``d_{h,i}`` of a complete-flag degree vector.

Row ``h`` of a split is a weakly increasing tuple of ``h`` non-negative
integers summing to ``dhat_h``; rows are chosen independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Iterator, Sequence

__all__ = [
    "DEFAULT_SPLIT_CAP",
    "SplitCapExceeded",
    "DegreeSplit",
    "increasing_compositions",
    "partitions_at_most",
    "enumerate_splits",
    "iter_splits",
    "count_splits",
    "check_t_constraints",
]

DEFAULT_SPLIT_CAP = 10_000


class SplitCapExceeded(RuntimeError):
    """Instance too large: the number of splits exceeds the configured cap."""


@dataclass(frozen=True)
class DegreeSplit:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n - 1:
            raise ValueError(f"split for n={self.n} needs {self.n - 1} rows, got {len(rows)}")
        for h, row in enumerate(rows, start=1):
            if len(row) != h:
                raise ValueError(f"row {h} must have {h} entries, got {len(row)}")
            if any(x < 0 for x in row) or list(row) != sorted(row):
                raise ValueError(f"row {h} must be weakly increasing and non-negative: {list(row)}")

    def d(self, h: int, i: int) -> int:
        """``d_{h,i}`` with the convention ``d_{n,j} = 0``."""
        if h == self.n:
            return 0
        return self.rows[h - 1][i - 1]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[int]]) -> "DegreeSplit":
        return cls(len(rows) + 1, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, n: int) -> "DegreeSplit":
        return cls(n, tuple((0,) * h for h in range(1, n)))


def increasing_compositions(m: int, parts: int, low: int = 0) -> Iterator[tuple[int, ...]]:
    """Weakly increasing tuples of ``parts`` integers ``>= low`` summing to ``m``,
    in lexicographic order."""
    if parts == 0:
        if m == 0:
            yield ()
        return
    if parts == 1:
        if m >= low:
            yield (m,)
        return
    # first entry x leaves m - x for parts - 1 entries, each >= x
    for x in range(low, m // parts + 1):
        for rest in increasing_compositions(m - x, parts - 1, x):
            yield (x,) + rest


@lru_cache(maxsize=None)
def partitions_at_most(m: int, parts: int) -> int:
    """Number of partitions of ``m`` into at most ``parts`` parts."""
    if m == 0:
        return 1
    if parts == 0:
        return 0
    # either fewer than `parts` parts, or subtract 1 from each of exactly `parts` parts
    total = partitions_at_most(m, parts - 1)
    if m >= parts:
        total += partitions_at_most(m - parts, parts)
    return total


def count_splits(dhat: Sequence[int]) -> int:
    return prod(partitions_at_most(int(x), h) for h, x in enumerate(dhat, start=1))


def iter_splits(dhat: Sequence[int]) -> Iterator[DegreeSplit]:
    n = len(dhat) + 1
    choices = [list(increasing_compositions(int(x), h)) for h, x in enumerate(dhat, start=1)]
    for rows in product(*choices):
        yield DegreeSplit(n, rows)


def enumerate_splits(dhat: Sequence[int], cap: int | None = DEFAULT_SPLIT_CAP) -> list[DegreeSplit]:
    if any(int(x) < 0 for x in dhat):
        raise ValueError("dhat entries must be non-negative")
    total = count_splits(dhat)
    if cap is not None and total > cap:
        raise SplitCapExceeded(f"instance too large: {total} degree splits exceed the cap of {cap}")
    return list(iter_splits(dhat))


def check_t_constraints(a: Sequence[int], d: Sequence[int], dhat: Sequence[int], split: DegreeSplit) -> bool:
    """Evaluate every linear constraint of the combined integer system directly.

    Independent of the staged (lift, then per-row) construction; used to
    check that the two agree.
    """
    n = split.n
    if len(dhat) != n - 1:
        return False
    D = sum(d)
    pad = (0,) + tuple(dhat) + (0,)
    bounds = (0,) + tuple(a) + (n,)
    for h, x in zip(a, d):
        if pad[h] != x:
            return False
    for h in range(len(bounds) - 1):
        for i in range(bounds[h] + 1, bounds[h + 1]):
            for j in range(i, bounds[h + 1]):
                val = -pad[i - 1] + pad[i] + pad[j] - pad[j + 1]
                if not -1 <= val <= 0:
                    return False
    for i in range(1, n):
        if sum(split.d(i, j) for j in range(1, i + 1)) - pad[i] != 0:
            return False
        if not 0 <= pad[i] <= D:
            return False
        for j in range(1, i + 1):
            if not 0 <= split.d(i, j) <= D:
                return False
            if j < i and split.d(i, j) - split.d(i, j + 1) > 0:
                return False
    return True
