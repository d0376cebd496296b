"""Coefficient fields: the rationals and prime fields GF(p), p < 2^63."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Field", "QQ", "GF", "is_prime", "random_prime", "PRIME_LOW", "PRIME_HIGH"]

PRIME_LOW = 1 << 60
PRIME_HIGH = 1 << 61

# Deterministic Miller-Rabin witnesses for every n < 3.3e24, in particular n < 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, low: int = PRIME_LOW, high: int = PRIME_HIGH) -> int:
    """Uniformly random prime in ``[low, high)`` by rejection sampling."""
    if high - low < 2:
        raise ValueError("empty prime range")
    for _ in range(1_000_000):
        c = rng.randrange(low, high)
        if is_prime(c):
            return c
    raise RuntimeError(f"no prime found in [{low}, {high})")


@dataclass(frozen=True)
class Field:
    """``p = None`` for the rationals, otherwise the prime field of order ``p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= 1 << 63:
                raise ValueError("prime field modulus must be below 2^63")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, c):
        """Coerce an integer or fraction into this field."""
        if self.p is None:
            return c if isinstance(c, int) else Fraction(c)
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def normalize(self, c):
        if self.p is None:
            if isinstance(c, Fraction) and c.denominator == 1:
                return c.numerator
            return c
        return c % self.p

    def inv(self, c):
        if self.p is None:
            return Fraction(1) / c
        return pow(c, -1, self.p)

    def symmetric(self, c) -> int:
        """Representative in ``(-p/2, p/2]`` (identity over the rationals)."""
        if self.p is None:
            return c
        c %= self.p
        return c - self.p if c > self.p // 2 else c

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text == "QQ":
            return QQ
        if text.startswith("GF(") and text.endswith(")"):
            return cls(int(text[3:-1]))
        raise ValueError(f"unknown field {text!r}")


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)
