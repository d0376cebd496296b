"""Buchberger's algorithm with Gebauer-Moeller pair pruning and sugar selection.

Internally monomials are packed into a single integer, 8 bits per variable
(variable of rank ``r`` in bits ``8r..8r+7``) with the total degree in the
topmost byte.  Multiplication is integer addition, divisibility is one
subtraction against guard bits, and ``m ^ LOW`` is a sort key for grevlex.
Exponents and total degrees must stay below 128.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .field import Field
from .poly import Polynomial, PolySystem, Registry

__all__ = [
    "BudgetExceeded",
    "GroebnerStats",
    "buchberger",
    "normal_form",
    "s_polynomial",
    "is_groebner",
    "ideal_contains_one",
    "DEFAULT_PAIR_BUDGET",
]

DEFAULT_PAIR_BUDGET = 200_000
_W = 8
_MAXDEG = 127


class BudgetExceeded(RuntimeError):
    """The pair-reduction, time or degree budget ran out before completion."""


@dataclass
class GroebnerStats:
    pairs_reduced: int = 0
    zero_reductions: int = 0
    pairs_skipped: int = 0
    basis_size: int = 0
    max_degree: int = 0
    seconds: float = 0.0
    unit: bool = False

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


class _Ctx:
    """Packing of one system's variables."""

    def __init__(self, registry: Registry, vids: Sequence[int], f: Field):
        ranked = sorted(set(vids), key=registry.rank_key)
        self.registry = registry
        self.vids = ranked
        self.pos = {v: r for r, v in enumerate(ranked)}
        self.N = n = len(ranked)
        self.low = (1 << (_W * n)) - 1
        self.dshift = _W * n
        self.guard = sum(0x80 << (_W * i) for i in range(n + 1))
        self.highs = self.guard & self.low
        self.sevens = sum(0x7F << (_W * i) for i in range(n))
        self.p = f.p
        self.field = f

    def pack(self, mono) -> int:
        m = 0
        deg = 0
        pos = self.pos
        for v, e in mono:
            if e > _MAXDEG:
                raise BudgetExceeded(f"exponent {e} exceeds packed range")
            m |= e << (_W * pos[v])
            deg += e
        if deg > _MAXDEG:
            raise BudgetExceeded(f"degree {deg} exceeds packed range")
        return m | (deg << self.dshift)

    def unpack(self, m: int) -> tuple:
        if not self.N:
            return ()
        raw = (m & self.low).to_bytes(self.N, "little")
        return tuple((self.vids[r], e) for r, e in enumerate(raw) if e)

    def deg(self, m: int) -> int:
        return m >> self.dshift

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        ge = (((a | g) - b) & g) >> (_W - 1)
        mask = ge * 0xFF
        low = ((a & mask) | (b & ~mask)) & self.low
        d = sum(low.to_bytes(self.N, "little")) if self.N else 0
        if d > _MAXDEG:
            raise BudgetExceeded(f"degree {d} exceeds packed range")
        return low | (d << self.dshift)

    def support(self, a: int) -> int:
        """High bit of each byte set iff that exponent is nonzero."""
        return ((a & self.low) + self.sevens) & self.highs

    def coprime(self, a: int, b: int) -> bool:
        return not (self.support(a) & self.support(b))

    def key(self, m: int) -> int:
        return m ^ self.low


class _P:
    __slots__ = ("monos", "coeffs", "lm", "sugar", "idx")

    def __init__(self, monos, coeffs, sugar):
        self.monos = monos
        self.coeffs = coeffs
        self.lm = monos[0]
        self.sugar = sugar
        self.idx = -1


def _to_internal(ctx: _Ctx, poly: Polynomial) -> dict:
    return {ctx.pack(m): c for m, c in poly.as_dict().items()}


def _from_internal(ctx: _Ctx, monos, coeffs) -> Polynomial:
    d = {ctx.unpack(m): c for m, c in zip(monos, coeffs)}
    return Polynomial(ctx.registry, ctx.field, d)


def _finish(ctx: _Ctx, terms: list, sugar: int) -> _P | None:
    """Make a reduced remainder monic (GF(p)) or primitive (QQ)."""
    if not terms:
        return None
    terms.sort(key=lambda t: t[0] ^ ctx.low, reverse=True)
    monos = [m for m, _ in terms]
    coeffs = [c for _, c in terms]
    p = ctx.p
    if p is not None:
        inv = pow(coeffs[0], -1, p)
        if inv != 1:
            coeffs = [c * inv % p for c in coeffs]
    else:
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if coeffs[0] < 0:
            g = -g
        if g != 1:
            coeffs = [c // g for c in coeffs]
    return _P(monos, coeffs, sugar)


def _reduce_mod(ctx: _Ctx, d: dict, reducers: list) -> list:
    """Full normal form over GF(p); ``d`` is consumed.  Reducers are monic."""
    p = ctx.p
    lowmask = ctx.low
    guard = ctx.guard
    heap = [-(m ^ lowmask) for m in d]
    heapq.heapify(heap)
    out = []
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = (-pop(heap)) ^ lowmask
        c = d.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for r in reducers:
            lm = r.lm
            if (mg - lm) & guard == guard:
                q = m - lm
                monos, coeffs = r.monos, r.coeffs
                for k in range(1, len(monos)):
                    mm = monos[k] + q
                    old = d.get(mm)
                    if old is None:
                        d[mm] = (-c * coeffs[k]) % p
                        push(heap, -(mm ^ lowmask))
                    else:
                        new = (old - c * coeffs[k]) % p
                        if new:
                            d[mm] = new
                        else:
                            d[mm] = 0
                break
        else:
            out.append((m, c))
    return out


def _reduce_qq(ctx: _Ctx, d: dict, reducers: list) -> list:
    """Fraction-free full normal form over QQ with integer coefficients."""
    lowmask = ctx.low
    guard = ctx.guard
    heap = [-(m ^ lowmask) for m in d]
    heapq.heapify(heap)
    out: list = []
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = (-pop(heap)) ^ lowmask
        c = d.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for r in reducers:
            lm = r.lm
            if (mg - lm) & guard == guard:
                a = r.coeffs[0]
                g = gcd(a, c)
                sa, sc = a // g, c // g
                if sa != 1:
                    for k in d:
                        d[k] *= sa
                    out = [(mm, cc * sa) for mm, cc in out]
                q = m - lm
                monos, coeffs = r.monos, r.coeffs
                for k in range(1, len(monos)):
                    mm = monos[k] + q
                    old = d.get(mm)
                    if old is None:
                        d[mm] = -sc * coeffs[k]
                        push(heap, -(mm ^ lowmask))
                    else:
                        d[mm] = old - sc * coeffs[k]
                break
        else:
            out.append((m, c))
    return out


def _spoly(ctx: _Ctx, f: _P, g: _P, lcm: int) -> dict:
    qf = lcm - f.lm
    qg = lcm - g.lm
    d: dict = {}
    if ctx.p is not None:
        p = ctx.p
        for m, c in zip(f.monos[1:], f.coeffs[1:]):
            d[m + qf] = c
        for m, c in zip(g.monos[1:], g.coeffs[1:]):
            mm = m + qg
            v = (d.get(mm, 0) - c) % p
            if v:
                d[mm] = v
            else:
                d.pop(mm, None)
    else:
        a, b = f.coeffs[0], g.coeffs[0]
        h = gcd(a, b)
        sf, sg = b // h, a // h
        for m, c in zip(f.monos[1:], f.coeffs[1:]):
            d[m + qf] = sf * c
        for m, c in zip(g.monos[1:], g.coeffs[1:]):
            mm = m + qg
            v = d.get(mm, 0) - sg * c
            if v:
                d[mm] = v
            else:
                d.pop(mm, None)
    return d


class _Engine:
    def __init__(self, ctx: _Ctx, budget: int, max_seconds: float | None):
        self.ctx = ctx
        self.budget = budget
        self.deadline = None if max_seconds is None else time.monotonic() + max_seconds
        self.polys: list[_P] = []
        self.active: list[int] = []
        self.pairs: list = []
        self.seq = 0
        self.stats = GroebnerStats()
        self.reduce = _reduce_mod if ctx.p is not None else _reduce_qq

    def reducers(self) -> list[_P]:
        return [self.polys[i] for i in self.active]

    def nf(self, d: dict, sugar: int) -> _P | None:
        red = sorted(self.reducers(), key=lambda r: len(r.monos))
        return _finish(self.ctx, self.reduce(self.ctx, d, red), sugar)

    def add(self, h: _P) -> None:
        ctx = self.ctx
        h.idx = len(self.polys)
        self.polys.append(h)
        lmh = h.lm
        polys = self.polys
        guard = ctx.guard
        self.stats.max_degree = max(self.stats.max_degree, ctx.deg(lmh))
        sup_h = ctx.support(lmh)
        # chain criterion on the new pairs: keep only lcms minimal under
        # divisibility, one per lcm; a coprime pair wins its lcm class and is
        # then dropped by the product criterion
        cands = []
        for j in self.active:
            lmj = polys[j].lm
            L = ctx.lcm(lmj, lmh)
            cands.append((L >> ctx.dshift, not (ctx.support(lmj) & sup_h) == 0, j, L))
        cands.sort(key=lambda c: (c[0], c[1]))
        minimal = []
        new_pairs = []
        for _, not_coprime, j, L in cands:
            Lg = L | guard
            if any((Lg - L2) & guard == guard for L2 in minimal):
                self.stats.pairs_skipped += 1
                continue
            minimal.append(L)
            if not_coprime:
                new_pairs.append((j, L))
            else:
                self.stats.pairs_skipped += 1
        survivors = []
        for entry in self.pairs:
            L = entry[5]
            if ((L | guard) - lmh) & guard == guard:
                if ctx.lcm(polys[entry[3]].lm, lmh) != L and ctx.lcm(polys[entry[4]].lm, lmh) != L:
                    self.stats.pairs_skipped += 1
                    continue
            survivors.append(entry)
        for j, L in new_pairs:
            g = polys[j]
            dl = ctx.deg(L)
            sugar = max(g.sugar + dl - ctx.deg(g.lm), h.sugar + dl - ctx.deg(lmh))
            self.seq += 1
            survivors.append((sugar, L ^ ctx.low, self.seq, j, h.idx, L))
        heapq.heapify(survivors)
        self.pairs = survivors
        self.active = [j for j in self.active if not ((polys[j].lm | guard) - lmh) & guard == guard] + [h.idx]

    def check_budget(self):
        if self.stats.pairs_reduced > self.budget:
            raise BudgetExceeded(f"pair budget of {self.budget} reductions exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")

    def run(self, inputs: list[dict], sugars: list[int]) -> bool:
        """Returns True iff the ideal is the unit ideal (stops early)."""
        order = sorted(range(len(inputs)), key=lambda k: (sugars[k], len(inputs[k])))
        for k in order:
            h = self.nf(dict(inputs[k]), sugars[k])
            if h is None:
                continue
            if h.lm == 0:
                return True
            self.add(h)
        while self.pairs:
            sugar, _, _, i, j, L = heapq.heappop(self.pairs)
            self.stats.pairs_reduced += 1
            self.check_budget()
            s = _spoly(self.ctx, self.polys[i], self.polys[j], L)
            h = self.nf(s, sugar)
            if h is None:
                self.stats.zero_reductions += 1
                continue
            if h.lm == 0:
                return True
            self.add(h)
        return False

    def reduced_basis(self) -> list[_P]:
        ctx = self.ctx
        basis = sorted((self.polys[i] for i in self.active), key=lambda r: r.lm ^ ctx.low)
        out = []
        for k, g in enumerate(basis):
            others = sorted(basis[:k] + basis[k + 1:], key=lambda r: len(r.monos))
            if ctx.p is None:
                out.append(_finish_exact(ctx, g, others))
            else:
                tail = dict(zip(g.monos[1:], g.coeffs[1:]))
                rest = _reduce_mod(ctx, tail, others)
                out.append(_finish(ctx, [(g.lm, 1)] + rest, g.sugar))
        return out


def _finish_exact(ctx: _Ctx, g: _P, others: list) -> _P:
    """Tail-reduce ``g`` over QQ keeping the leading term exact."""
    a = g.coeffs[0]
    d = dict(zip(g.monos[1:], [Fraction(c, a) for c in g.coeffs[1:]]))
    # reduce with rational arithmetic using monic reducers
    monic = []
    for r in others:
        lc = r.coeffs[0]
        monic.append((r.lm, r.monos, [Fraction(c, lc) for c in r.coeffs]))
    lowmask, guard = ctx.low, ctx.guard
    heap = [-(m ^ lowmask) for m in d]
    heapq.heapify(heap)
    out = [(g.lm, Fraction(1))]
    while heap:
        m = (-heapq.heappop(heap)) ^ lowmask
        c = d.pop(m, 0)
        if not c:
            continue
        for lm, monos, coeffs in monic:
            if ((m | guard) - lm) & guard == guard:
                q = m - lm
                for k in range(1, len(monos)):
                    mm = monos[k] + q
                    if mm not in d:
                        heapq.heappush(heap, -(mm ^ lowmask))
                    d[mm] = d.get(mm, 0) - c * coeffs[k]
                break
        else:
            out.append((m, c))
    den = 1
    for _, c in out:
        den = den * c.denominator // gcd(den, c.denominator)
    terms = [(m, int(c * den)) for m, c in out]
    return _finish(ctx, terms, g.sugar)


def _prepare(polys: Sequence[Polynomial]) -> tuple[_Ctx, list[dict], list[int]]:
    if not polys:
        raise ValueError("empty generator list")
    reg = polys[0].registry
    f = polys[0].field
    for q in polys:
        if q.field != f or q.registry is not reg:
            raise ValueError("generators must share one field and registry")
    vids = sorted({v for q in polys for v in q.variables()})
    ctx = _Ctx(reg, vids, f)
    inputs, sugars = [], []
    for q in polys:
        if q.is_zero():
            continue
        d = _to_internal(ctx, q)
        if f.p is None:
            d = _integral(d)
        inputs.append(d)
        sugars.append(q.total_degree())
    return ctx, inputs, sugars


def _integral(d: dict) -> dict:
    """Scale rational coefficients to a primitive integer vector."""
    den = 1
    for c in d.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in d.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    return {m: c // g for m, c in ints.items()} if g > 1 else ints


def buchberger(
    gens: Sequence[Polynomial],
    *,
    budget: int = DEFAULT_PAIR_BUDGET,
    max_seconds: float | None = None,
    stop_on_unit: bool = True,
    stats: GroebnerStats | None = None,
) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Over GF(p) the basis is monic; over QQ each element is a primitive
    integer polynomial with positive leading coefficient.  The unit ideal
    yields ``[1]``.
    """
    t0 = time.monotonic()
    ctx, inputs, sugars = _prepare(gens)
    reg, f = ctx.registry, ctx.field
    if not inputs:
        return []
    eng = _Engine(ctx, budget, max_seconds)
    try:
        unit = eng.run(inputs, sugars)
    finally:
        if stats is not None:
            stats.__dict__.update(eng.stats.__dict__)
            stats.seconds = time.monotonic() - t0
    if unit:
        if stats is not None:
            stats.unit = True
            stats.basis_size = 1
        return [Polynomial.constant(reg, 1, f)]
    basis = eng.reduced_basis()
    if stats is not None:
        stats.basis_size = len(basis)
        stats.seconds = time.monotonic() - t0
    return [_from_internal(ctx, b.monos, b.coeffs) for b in basis]


def normal_form(p: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``p`` under multivariate division by ``basis``.

    Over QQ the remainder is exact (rational arithmetic with monic
    divisors); over GF(p) divisors are made monic.
    """
    basis = [b for b in basis if not b.is_zero()]
    if p.is_zero():
        return p
    reg, f = p.registry, p.field
    vids = sorted(p.variables() | {v for b in basis for v in b.variables()})
    ctx = _Ctx(reg, vids, f)
    reducers = []
    for b in basis:
        if b.field != f or b.registry is not reg:
            raise ValueError("normal_form operands must share field and registry")
        d = _to_internal(ctx, b)
        items = sorted(d.items(), key=lambda t: t[0] ^ ctx.low, reverse=True)
        lc = items[0][1]
        if f.p is not None:
            inv = pow(lc, -1, f.p)
            coeffs = [c * inv % f.p for _, c in items]
        else:
            coeffs = [Fraction(c) / lc for _, c in items]
        reducers.append(_P([m for m, _ in items], coeffs, 0))
    d = _to_internal(ctx, p)
    if f.p is not None:
        out = _reduce_mod(ctx, d, reducers)
    else:
        out = _reduce_frac(ctx, d, reducers)
    return _from_internal(ctx, [m for m, _ in out], [c for _, c in out])


def _reduce_frac(ctx: _Ctx, d: dict, reducers: list) -> list:
    lowmask, guard = ctx.low, ctx.guard
    heap = [-(m ^ lowmask) for m in d]
    heapq.heapify(heap)
    out = []
    while heap:
        m = (-heapq.heappop(heap)) ^ lowmask
        c = d.pop(m, 0)
        if not c:
            continue
        for r in reducers:
            if ((m | guard) - r.lm) & guard == guard:
                q = m - r.lm
                for k in range(1, len(r.monos)):
                    mm = r.monos[k] + q
                    if mm not in d:
                        heapq.heappush(heap, -(mm ^ lowmask))
                    d[mm] = d.get(mm, 0) - c * r.coeffs[k]
                break
        else:
            out.append((m, c))
    return out


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``lcm/LT(f) * f - lcm/LT(g) * g`` with leading coefficients divided out."""
    reg, fld = f.registry, f.field
    (mf, cf), (mg, cg) = f.leading_term(), g.leading_term()
    ef, eg = dict(mf), dict(mg)
    lcm = {v: max(ef.get(v, 0), eg.get(v, 0)) for v in set(ef) | set(eg)}
    qf = tuple(sorted((v, e - ef.get(v, 0)) for v, e in lcm.items() if e - ef.get(v, 0)))
    qg = tuple(sorted((v, e - eg.get(v, 0)) for v, e in lcm.items() if e - eg.get(v, 0)))
    a = Polynomial(reg, fld, {qf: fld.inv(cf)})
    b = Polynomial(reg, fld, {qg: fld.inv(cg)})
    return a * f - b * g


def is_groebner(basis: Sequence[Polynomial]) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    basis = [b for b in basis if not b.is_zero()]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero():
                return False
    return True


def ideal_contains_one(
    sys: PolySystem,
    *,
    budget: int = DEFAULT_PAIR_BUDGET,
    max_seconds: float | None = None,
    stats: GroebnerStats | None = None,
) -> bool:
    """Weak Nullstellensatz test: is 1 in the ideal generated by ``sys``?"""
    if sys.parameters:
        names = [sys.registry.names[v] for v in sys.parameters]
        raise ValueError(f"system still has parameters {names}; specialize first")
    polys = [p for p in sys.polys if not p.is_zero()]
    if not polys:
        return False
    if any(p.is_constant() for p in polys):
        if stats is not None:
            stats.unit = True
        return True
    gb = buchberger(polys, budget=budget, max_seconds=max_seconds, stats=stats)
    return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()
