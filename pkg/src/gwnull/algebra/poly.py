"""Sparse multivariate polynomials over QQ or GF(p).

A monomial is a tuple of ``(var_id, exponent)`` pairs sorted by ``var_id``
with no zero exponents.  Variables live in a :class:`Registry`, which also
fixes the monomial order (graded reverse lexicographic, with variables
ranked first by block priority and then by registration index).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Mapping

from .field import QQ, Field

__all__ = [
    "UNKNOWN",
    "PARAMETER",
    "Registry",
    "MonomialOrder",
    "Polynomial",
    "PolySystem",
    "FieldMismatch",
    "monomial_cmp",
    "mono_mul",
    "mono_degree",
    "poly_add",
    "poly_mul",
    "poly_neg",
    "specialize",
]

UNKNOWN = "unknown"
PARAMETER = "parameter"

Monomial = tuple  # tuple[tuple[int, int], ...]
ONE: Monomial = ()


class FieldMismatch(ValueError):
    """Operands live over different fields or registries."""


@dataclass
class Registry:
    """Variable names, unknown/parameter tags and order blocks.

    Ids are dense indices.  Lower block numbers rank higher in the monomial
    order; ties are broken by registration index (earlier is larger).
    """

    names: list[str] = field(default_factory=list)
    kinds: list[str] = field(default_factory=list)
    blocks: list[int] = field(default_factory=list)
    groups: list[str] = field(default_factory=list)
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def add(self, name: str, kind: str = UNKNOWN, block: int = 0, group: str = "") -> int:
        if name in self._index:
            raise ValueError(f"variable {name!r} already registered")
        if kind not in (UNKNOWN, PARAMETER):
            raise ValueError(f"bad variable kind {kind!r}")
        vid = len(self.names)
        self.names.append(name)
        self.kinds.append(kind)
        self.blocks.append(block)
        self.groups.append(group or name)
        self._index[name] = vid
        return vid

    def get_or_add(self, name: str, kind: str = UNKNOWN, block: int = 0, group: str = "") -> int:
        vid = self._index.get(name)
        return self.add(name, kind, block, group) if vid is None else vid

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def id(self, name: str) -> int:
        return self._index[name]

    def var(self, name: str, f: Field = QQ) -> "Polynomial":
        return Polynomial.variable(self, self._index[name], f)

    def parameters(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == PARAMETER]

    def unknowns(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == UNKNOWN]

    def rank_key(self, vid: int) -> tuple[int, int]:
        return (self.blocks[vid], vid)

    @property
    def order(self) -> "MonomialOrder":
        return MonomialOrder(self)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Registry":
        reg = cls()
        for nm in names:
            reg.add(nm)
        return reg


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order over a registry's variable ranking."""

    registry: Registry

    def cmp(self, m1: Monomial, m2: Monomial) -> int:
        return monomial_cmp(m1, m2, self)

    def sort_key(self):
        return cmp_to_key(self.cmp)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def monomial_cmp(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller, equal or greater than ``m2``."""
    if m1 == m2:
        return 0
    d1, d2 = mono_degree(m1), mono_degree(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    e1, e2 = dict(m1), dict(m2)
    rank = order.registry.rank_key
    # smallest variable first; a smaller exponent there makes the monomial larger
    for v in sorted(set(e1) | set(e2), key=rank, reverse=True):
        a, b = e1.get(v, 0), e2.get(v, 0)
        if a != b:
            return 1 if a < b else -1
    return 0


class Polynomial:
    """Immutable polynomial; ``terms`` lists ``(monomial, coeff)`` in
    strictly decreasing monomial order."""

    __slots__ = ("registry", "field", "_d", "_terms", "_hash")

    def __init__(self, registry: Registry, f: Field, d: Mapping[Monomial, object] | None = None):
        self.registry = registry
        self.field = f
        clean = {}
        if d:
            for m, c in d.items():
                c = f(c) if f.p is not None else f.normalize(c)
                if c:
                    clean[m] = c
        self._d = clean
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, registry: Registry, f: Field, d: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.registry = registry
        p.field = f
        p._d = d
        p._terms = None
        p._hash = None
        return p

    @classmethod
    def constant(cls, registry: Registry, c, f: Field = QQ) -> "Polynomial":
        return cls(registry, f, {ONE: c})

    @classmethod
    def zero(cls, registry: Registry, f: Field = QQ) -> "Polynomial":
        return cls._raw(registry, f, {})

    @classmethod
    def variable(cls, registry: Registry, vid: int, f: Field = QQ) -> "Polynomial":
        return cls._raw(registry, f, {((vid, 1),): 1})

    # ---- views
    @property
    def terms(self) -> list[tuple[Monomial, object]]:
        if self._terms is None:
            key = self.registry.order.sort_key()
            self._terms = sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True)
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and ONE in self._d)

    def constant_value(self):
        return self._d.get(ONE, 0)

    def leading_term(self) -> tuple[Monomial, object]:
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._d), default=-1)

    def degree_in(self, vids: Iterable[int]) -> int:
        s = set(vids)
        return max((sum(e for v, e in m if v in s) for m in self._d), default=-1)

    def variables(self) -> set[int]:
        return {v for m in self._d for v, _ in m}

    # ---- arithmetic
    def _check(self, other: "Polynomial"):
        if other.field != self.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")
        if other.registry is not self.registry:
            raise FieldMismatch("polynomials belong to different registries")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.registry, other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._d)
        p = self.field.p
        for m, c in other._d.items():
            s = d.get(m, 0) + c
            if p is not None:
                s %= p
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial._raw(self.registry, self.field, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        if p is None:
            d = {m: -c for m, c in self._d.items()}
        else:
            d = {m: (-c) % p for m, c in self._d.items()}
        return Polynomial._raw(self.registry, self.field, d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.field.p
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        if p is None:
            d = {m: c for m, c in d.items() if c}
        else:
            d = {m: c % p for m, c in d.items() if c % p}
        return Polynomial._raw(self.registry, self.field, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.registry, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        return self * Polynomial.constant(self.registry, c, self.field)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self._d == other._d
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self._d == ({ONE: self.field(other)} if self.field(other) else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._d.items())))
        return self._hash

    # ---- conversions
    def to_field(self, f: Field) -> "Polynomial":
        if f == self.field:
            return self
        if not self.field.is_rational:
            raise FieldMismatch(f"cannot map {self.field} coefficients into {f}")
        return Polynomial(self.registry, f, self._d)

    def substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Replace variables by field constants."""
        f = self.field
        p = f.p
        d: dict = {}
        for m, c in self._d.items():
            rest = []
            for v, e in m:
                if v in values:
                    val = values[v]
                    c = c * (pow(val, e, p) if p is not None else val**e)
                else:
                    rest.append((v, e))
            if p is not None:
                c %= p
            if c:
                key = tuple(rest)
                d[key] = d.get(key, 0) + c
        if p is None:
            d = {m: f.normalize(c) for m, c in d.items() if c}
        else:
            d = {m: c % p for m, c in d.items() if c % p}
        return Polynomial._raw(self.registry, f, d)

    def evaluate(self, point: Mapping[int, object]):
        r = self.substitute(point)
        if not r.is_constant():
            missing = sorted(r.variables())
            raise ValueError(f"evaluation point misses variables {missing}")
        return r.constant_value()

    def __repr__(self) -> str:
        from .io import format_poly

        return f"Polynomial({format_poly(self)!r}, {self.field})"

    def __str__(self) -> str:
        from .io import format_poly

        return format_poly(self)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_neg(p: Polynomial) -> Polynomial:
    return -p


@dataclass
class PolySystem:
    registry: Registry
    polys: list[Polynomial]
    parameters: list[int] = field(default_factory=list)
    tags: list[str] | None = None

    def __post_init__(self):
        n = len(self.registry)
        for p in self.polys:
            if p.registry is not self.registry:
                raise FieldMismatch("system polynomial uses a foreign registry")
            if any(v >= n for v in p.variables()):
                raise ValueError("polynomial uses an unregistered variable")

    @property
    def field(self) -> Field:
        return self.polys[0].field if self.polys else QQ

    def unknowns_used(self) -> set[int]:
        params = set(self.parameters)
        return {v for p in self.polys for v in p.variables()} - params

    def to_field(self, f: Field) -> "PolySystem":
        return PolySystem(self.registry, [p.to_field(f) for p in self.polys], list(self.parameters), self.tags)


def specialize(sys: PolySystem, assignment: Mapping[int, object], f: Field | None = None) -> PolySystem:
    """Substitute values for every parameter; returns a parameter-free system.

    Zero polynomials are dropped.  ``f`` optionally changes the coefficient
    field first (QQ -> GF(p)).
    """
    missing = [sys.registry.names[v] for v in sys.parameters if v not in assignment]
    extra = [v for v in assignment if v not in set(sys.parameters)]
    if missing:
        raise ValueError(f"incomplete assignment: missing parameters {missing}")
    if extra:
        raise ValueError(f"assignment covers non-parameter variables {extra}")
    target = f or sys.field
    vals = {v: target(c) for v, c in assignment.items()}
    out, tags = [], []
    for k, p in enumerate(sys.polys):
        q = p.to_field(target).substitute(vals)
        if not q.is_zero():
            out.append(q)
            if sys.tags is not None:
                tags.append(sys.tags[k])
    return PolySystem(sys.registry, out, [], tags if sys.tags is not None else None)
