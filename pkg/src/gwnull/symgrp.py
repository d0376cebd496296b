"""Symmetric-group combinatorics on 1-indexed one-line permutations.

Permutations are immutable tuples ``(w(1), ..., w(n))``.  Flag shapes are
strictly increasing tuples ``0 < a_1 < ... < a_k < n``; the blocks they
induce are the intervals ``(a_h, a_{h+1}]`` with ``a_0 = 0`` and
``a_{k+1} = n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "FlagShape",
    "RankTable",
    "length",
    "rank_table",
    "min_coset_rep",
    "longest_in_transposition_subgroup",
    "compose",
    "inverse",
    "poincare_dual",
    "identity",
    "longest",
    "all_permutations",
]


@dataclass(frozen=True)
class Permutation:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise ValueError(f"not a permutation of [1..{len(entries)}]: {list(entries)}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, i: int) -> int:
        return self.entries[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation({list(self.entries)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def length(self) -> int:
        return length(self)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def to_json(self) -> list[int]:
        return list(self.entries)


def _perm(w) -> Permutation:
    return w if isinstance(w, Permutation) else Permutation(tuple(w))


@dataclass(frozen=True)
class FlagShape:
    n: int
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        prev = 0
        for x in a:
            if not prev < x < self.n:
                raise ValueError(f"shape must satisfy 0 < a_1 < ... < a_k < n={self.n}, got {list(a)}")
            prev = x

    @classmethod
    def complete(cls, n: int) -> "FlagShape":
        return cls(n, tuple(range(1, n)))

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def is_complete(self) -> bool:
        return self.a == tuple(range(1, self.n))

    def boundaries(self) -> tuple[int, ...]:
        """``(a_0, a_1, ..., a_k, a_{k+1}) = (0, a_1, ..., a_k, n)``."""
        return (0,) + self.a + (self.n,)

    def blocks(self) -> list[range]:
        b = self.boundaries()
        return [range(b[h] + 1, b[h + 1] + 1) for h in range(len(b) - 1)]


@dataclass(frozen=True)
class RankTable:
    """``r[i][j] = |{h <= i : w(h) <= j}|``, stored with a zero row/column so
    that indices are 1-based."""

    n: int
    r: tuple[tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        return self.r[i][j]


def length(w) -> int:
    e = _perm(w).entries
    n = len(e)
    return sum(1 for i in range(n) for j in range(i + 1, n) if e[i] > e[j])


def rank_table(w) -> RankTable:
    w = _perm(w)
    n = w.n
    rows = [tuple([0] * (n + 1))]
    counts = [0] * (n + 1)
    for i in range(1, n + 1):
        counts[w(i)] += 1
        row = [0]
        acc = 0
        for j in range(1, n + 1):
            acc += counts[j]
            row.append(acc)
        rows.append(tuple(row))
    return RankTable(n, tuple(rows))


def compose(u, v) -> Permutation:
    """``(u o v)(i) = u(v(i))``."""
    u, v = _perm(u), _perm(v)
    if u.n != v.n:
        raise ValueError(f"size mismatch: {u.n} vs {v.n}")
    return Permutation(tuple(u(v(i)) for i in range(1, v.n + 1)))


def inverse(w) -> Permutation:
    w = _perm(w)
    inv = [0] * w.n
    for i, x in enumerate(w.entries, start=1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def poincare_dual(w) -> Permutation:
    w = _perm(w)
    return compose(longest(w.n), w)


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def min_coset_rep(w, shape: FlagShape) -> Permutation:
    """Minimal-length representative of ``w S_a``: sort values in each block."""
    w = _perm(w)
    if w.n != shape.n:
        raise ValueError(f"permutation of size {w.n} does not match shape with n={shape.n}")
    out = list(w.entries)
    for block in shape.blocks():
        lo, hi = block.start - 1, block.stop - 1
        out[lo:hi] = sorted(out[lo:hi])
    return Permutation(tuple(out))


def _components(n: int, gens: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in gens:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"({i},{j}) is not a transposition of [1..{n}]")
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    comps: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        comps.setdefault(find(x), []).append(x)
    return [c for c in comps.values() if len(c) > 1]


def longest_in_transposition_subgroup(n: int, gens: Iterable[tuple[int, int]]) -> Permutation:
    """Longest element of the subgroup generated by the transpositions ``gens``.

    Transpositions generate the full symmetric group on each connected
    component of their graph, so the answer reverses every component.
    """
    out = list(range(1, n + 1))
    for comp in _components(n, gens):
        for lo, hi in zip(comp, reversed(comp)):
            out[lo - 1] = hi
    return Permutation(tuple(out))


def is_increasing_in_blocks(w: Permutation, shape: FlagShape) -> bool:
    return min_coset_rep(w, shape) == w


def parse_permutation(values: Sequence[int]) -> Permutation:
    return Permutation(tuple(values))
