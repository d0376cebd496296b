"""Reduction of partial-flag instances to complete-flag instances.

A degree vector on ``F(a, n)`` lifts to a unique degree vector on the
complete flag variety; the third permutation picks up a correction by the
longest element of a transposition-generated subgroup of ``S_a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .symgrp import (
    FlagShape,
    Permutation,
    compose,
    longest_in_transposition_subgroup,
    min_coset_rep,
)

__all__ = [
    "LiftError",
    "GWInstance",
    "CompleteInstance",
    "lift_degrees",
    "window_positions",
    "window_value",
    "correction_element",
    "reduce_to_complete",
]


class LiftError(ValueError):
    """The degree lift search found zero or several solutions."""


@dataclass(frozen=True)
class GWInstance:
    shape: FlagShape
    degree: tuple[int, ...]
    u: Permutation
    v: Permutation
    w: Permutation

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        if len(self.degree) != self.shape.k:
            raise ValueError(
                f"degree has length {len(self.degree)} but shape a has length {self.shape.k}"
            )
        if any(x < 0 for x in self.degree):
            raise ValueError(f"degree entries must be non-negative, got {list(self.degree)}")
        for name in ("u", "v", "w"):
            p = getattr(self, name)
            if not isinstance(p, Permutation):
                p = Permutation(tuple(p))
                object.__setattr__(self, name, p)
            if p.n != self.shape.n:
                raise ValueError(f"{name} has size {p.n} but n={self.shape.n}")

    @property
    def n(self) -> int:
        return self.shape.n

    @classmethod
    def complete(cls, u, v, w, degree: Sequence[int]) -> "GWInstance":
        u = u if isinstance(u, Permutation) else Permutation(tuple(u))
        return cls(FlagShape.complete(u.n), tuple(degree), u, v, w)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": list(self.shape.a),
            "d": list(self.degree),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "w": self.w.to_json(),
        }


@dataclass(frozen=True)
class CompleteInstance:
    n: int
    dhat: tuple[int, ...]
    u: Permutation
    v: Permutation
    w: Permutation

    def __post_init__(self):
        object.__setattr__(self, "dhat", tuple(int(x) for x in self.dhat))
        if len(self.dhat) != self.n - 1:
            raise ValueError(f"dhat must have length n-1={self.n - 1}, got {len(self.dhat)}")
        if any(x < 0 for x in self.dhat):
            raise ValueError("dhat entries must be non-negative")
        for name in ("u", "v", "w"):
            p = getattr(self, name)
            if not isinstance(p, Permutation):
                p = Permutation(tuple(p))
                object.__setattr__(self, name, p)
            if p.n != self.n:
                raise ValueError(f"{name} has size {p.n} but n={self.n}")

    def perms(self) -> tuple[Permutation, Permutation, Permutation]:
        return (self.u, self.v, self.w)

    def as_gw_instance(self) -> GWInstance:
        return GWInstance(FlagShape.complete(self.n), self.dhat, self.u, self.v, self.w)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dhat": list(self.dhat),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "w": self.w.to_json(),
        }


def window_positions(shape: FlagShape) -> list[tuple[int, int]]:
    """All ``(i, j)`` with ``a_h < i <= j < a_{h+1}`` for some block."""
    b = shape.boundaries()
    out = []
    for h in range(len(b) - 1):
        for i in range(b[h] + 1, b[h + 1]):
            for j in range(i, b[h + 1]):
                out.append((i, j))
    return out


def window_value(dhat: Sequence[int], i: int, j: int) -> int:
    """``-dhat_{i-1} + dhat_i + dhat_j - dhat_{j+1}`` with zero padding."""
    padded = (0,) + tuple(dhat) + (0,)
    return -padded[i - 1] + padded[i] + padded[j] - padded[j + 1]


def _lift_search(shape: FlagShape, d: tuple[int, ...], bound: int) -> list[tuple[int, ...]]:
    n = shape.n
    fixed = {a: x for a, x in zip(shape.a, d)}
    free = [i for i in range(1, n) if i not in fixed]
    windows = window_positions(shape)
    found = []
    for values in product(range(bound + 1), repeat=len(free)):
        dhat = [0] * (n - 1)
        for i, x in fixed.items():
            dhat[i - 1] = x
        for i, x in zip(free, values):
            dhat[i - 1] = x
        if all(window_value(dhat, i, j) in (0, -1) for i, j in windows):
            found.append(tuple(dhat))
    return found


def lift_degrees(shape: FlagShape, d: Sequence[int]) -> tuple[int, ...]:
    """The unique complete-flag degree vector lifting ``d``.

    Found by exhaustive search over entries in ``[0, max d]``, widened to
    ``[0, sum d]`` if the tight bound yields nothing.
    """
    d = tuple(int(x) for x in d)
    if len(d) != shape.k:
        raise ValueError(f"degree has length {len(d)} but shape a has length {shape.k}")
    if any(x < 0 for x in d):
        raise ValueError("degree entries must be non-negative")
    found = _lift_search(shape, d, max(d, default=0))
    if not found and sum(d) > max(d, default=0):
        found = _lift_search(shape, d, sum(d))
    if len(found) != 1:
        raise LiftError(f"lift not found / not unique: {len(found)} solutions for a={list(shape.a)}, d={list(d)}")
    return found[0]


def correction_generators(shape: FlagShape, dhat: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, j + 1) for i, j in window_positions(shape) if window_value(dhat, i, j) == 0]


def correction_element(shape: FlagShape, dhat: Sequence[int]) -> Permutation:
    gens = correction_generators(shape, dhat)
    blocks = shape.blocks()
    for i, j in gens:
        if not any(i in b and j in b for b in blocks):
            raise AssertionError(f"generator ({i},{j}) leaves every block of a={list(shape.a)}")
    return longest_in_transposition_subgroup(shape.n, gens)


def reduce_to_complete(inst: GWInstance) -> CompleteInstance:
    shape = inst.shape
    dhat = lift_degrees(shape, inst.degree)
    wprime = correction_element(shape, dhat)
    u = min_coset_rep(inst.u, shape)
    v = min_coset_rep(inst.v, shape)
    w = compose(min_coset_rep(inst.w, shape), wprime)
    return CompleteInstance(shape.n, dhat, u, v, w)
