"""Independent combinatorial values of GW invariants on small instances.

* degree zero: Schubert structure constants from products of Schubert
  polynomials, ``<u, v, w>_0 = c_{u,v}^{w0 w}``;
* divisor middle class: the quantum Monk rule, any degree;
* P^1 closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .algebra import QQ, Polynomial, Registry
from .symgrp import Permutation, compose, length, longest, poincare_dual

__all__ = [
    "SchubertExpansion",
    "lehmer_code",
    "from_code",
    "schubert_dict",
    "schubert_poly",
    "schubert_product",
    "struct_const",
    "gw_zero",
    "quantum_monk",
    "classical_monk",
    "gw_divisor",
    "simple_transposition",
    "p1_gw",
]

ExpDict = dict  # dict[tuple[int, ...], int], exponent tuples of fixed width


@dataclass
class SchubertExpansion:
    """``{(perm, qdeg): coeff}``; ``qdeg`` is ``()`` for classical expansions."""

    n: int
    terms: dict = field(default_factory=dict)

    def add(self, w: Permutation, qdeg: tuple[int, ...], c: int = 1) -> None:
        key = (w, tuple(qdeg))
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def coeff(self, w: Permutation, qdeg: Sequence[int] = ()) -> int:
        return self.terms.get((w, tuple(qdeg)), 0)

    def classical_part(self) -> dict[Permutation, int]:
        return {w: c for (w, q), c in self.terms.items() if not any(q)}

    def to_json(self) -> list[dict]:
        return [
            {"perm": w.to_json(), "q": list(q), "coeff": c}
            for (w, q), c in sorted(self.terms.items(), key=lambda t: (sum(t[0][1]), t[0][1], t[0][0].entries))
        ]


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    e = w.entries
    return tuple(sum(1 for j in range(i + 1, len(e)) if e[j] < e[i]) for i in range(len(e)))


def from_code(code: Sequence[int], m: int) -> Permutation:
    """Permutation of ``[1..m]`` with the given Lehmer code (zero-padded)."""
    code = list(code) + [0] * (m - len(code))
    avail = list(range(1, m + 1))
    out = []
    for c in code[:m]:
        out.append(avail.pop(c))
    return Permutation(tuple(out))


def _embed(w: Permutation, m: int) -> Permutation:
    if w.n > m:
        raise ValueError(f"permutation of size {w.n} does not embed in S_{m}")
    return Permutation(w.entries + tuple(range(w.n + 1, m + 1)))


def _divided_difference(f: ExpDict, i: int) -> ExpDict:
    """``(f - s_i f) / (x_i - x_{i+1})`` on exponent tuples (0-based ``i``)."""
    out: ExpDict = {}
    for alpha, c in f.items():
        a, b = alpha[i], alpha[i + 1]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, hi = min(a, b), max(a, b)
        base = list(alpha)
        for k in range(hi - lo):
            base[i] = hi - 1 - k
            base[i + 1] = lo + k
            key = tuple(base)
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _schubert(entries: tuple[int, ...]) -> tuple:
    m = len(entries)
    w = list(entries)
    for i in range(m - 1):
        if w[i] < w[i + 1]:
            # w s_i is longer by one; descend from it
            ws = w[:]
            ws[i], ws[i + 1] = ws[i + 1], ws[i]
            parent = dict(_schubert(tuple(ws)))
            return tuple(_divided_difference(parent, i).items())
    # longest element: staircase monomial
    return (((tuple(range(m - 1, -1, -1))), 1),)


def schubert_dict(w: Permutation, m: int | None = None) -> ExpDict:
    """Schubert polynomial of ``w`` embedded in ``S_m``, as
    ``{exponent tuple of length m: coeff}``."""
    m = w.n if m is None else m
    return dict(_schubert(_embed(w, m).entries))


def schubert_poly(w: Permutation, m: int | None = None, registry: Registry | None = None) -> Polynomial:
    """Schubert polynomial in variables ``x1 .. x_{m-1}``."""
    m = w.n if m is None else m
    reg = registry or Registry.from_names([f"x{i}" for i in range(1, max(m, 2))])
    ids = [reg.get_or_add(f"x{i}") for i in range(1, m)]
    d = {}
    for alpha, c in schubert_dict(w, m).items():
        d[tuple((ids[i], e) for i, e in enumerate(alpha[: m - 1]) if e)] = c
    return Polynomial(reg, QQ, d)


def _mul(f: ExpDict, g: ExpDict) -> ExpDict:
    out: ExpDict = {}
    for a, c in f.items():
        for b, e in g.items():
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = out.get(k, 0) + c * e
    return {k: v for k, v in out.items() if v}


def schubert_product(u: Permutation, v: Permutation, m: int | None = None) -> dict[Permutation, int]:
    """Expand ``S_u S_v`` in Schubert polynomials of ``S_m`` (default ``m = 2n``).

    The lex-smallest monomial of ``S_w`` (with ``x1 > x2 > ...``) is
    ``x^code(w)`` with coefficient 1, and distinct permutations have
    distinct codes, so peeling the lex-smallest term yields the expansion.
    """
    n = max(u.n, v.n)
    m = 2 * n if m is None else m
    f = _mul(schubert_dict(u, m), schubert_dict(v, m))
    out: dict[Permutation, int] = {}
    while f:
        lead = min(f)
        c = f[lead]
        w = from_code(lead, m)
        if lehmer_code(w) != lead:
            raise RuntimeError(f"exponent {lead} is not a Lehmer code in S_{m}")
        out[w] = out.get(w, 0) + c
        for a, e in schubert_dict(w, m).items():
            v2 = f.get(a, 0) - c * e
            if v2:
                f[a] = v2
            else:
                f.pop(a, None)
    return out


def _restrict(w: Permutation, n: int) -> Permutation | None:
    if all(w.entries[i] == i + 1 for i in range(n, w.n)):
        return Permutation(w.entries[:n])
    return None


def struct_const(u, v, w) -> int:
    """``c_{u,v}^w`` for ``u, v, w`` in the same ``S_n``."""
    u, v, w = (x if isinstance(x, Permutation) else Permutation(tuple(x)) for x in (u, v, w))
    n = w.n
    for z, c in schubert_product(u, v).items():
        if _restrict(z, n) == w:
            return c
    return 0


def gw_zero(u, v, w) -> int:
    """Degree-zero invariant ``<u, v, w>_0 = c_{u,v}^{w0 w}``."""
    w = w if isinstance(w, Permutation) else Permutation(tuple(w))
    return struct_const(u, v, poincare_dual(w))


def simple_transposition(n: int, r: int) -> Permutation:
    e = list(range(1, n + 1))
    e[r - 1], e[r] = e[r], e[r - 1]
    return Permutation(tuple(e))


def _swap_positions(w: Permutation, a: int, b: int) -> Permutation:
    e = list(w.entries)
    e[a - 1], e[b - 1] = e[b - 1], e[a - 1]
    return Permutation(tuple(e))


def quantum_monk(r: int, w: Permutation) -> SchubertExpansion:
    """``sigma_{s_r} * sigma_w`` in the small quantum cohomology of ``Fl(n)``."""
    n = w.n
    if not 1 <= r <= n - 1:
        raise ValueError(f"r must be in [1, {n - 1}]")
    out = SchubertExpansion(n)
    lw = length(w)
    for a in range(1, r + 1):
        for b in range(r + 1, n + 1):
            z = _swap_positions(w, a, b)
            lz = length(z)
            if lz == lw + 1:
                out.add(z, (0,) * (n - 1))
            elif lz == lw + 1 - 2 * (b - a):
                q = tuple(1 if a <= k < b else 0 for k in range(1, n))
                out.add(z, q)
    return out


def classical_monk(r: int, w: Permutation) -> dict[Permutation, int]:
    return {z: c for z, c in quantum_monk(r, w).classical_part().items()}


def gw_divisor(u, r: int, w, d: Sequence[int]) -> int:
    """``<sigma_u, sigma_{s_r}, sigma_w>_d`` on ``Fl(n)``."""
    u = u if isinstance(u, Permutation) else Permutation(tuple(u))
    w = w if isinstance(w, Permutation) else Permutation(tuple(w))
    return quantum_monk(r, u).coeff(poincare_dual(w), tuple(d))


def p1_gw(a: int, b: int, c: int, d: int) -> int:
    """Three-point invariants of ``P^1``; each class is 0 (unit) or 1 (point)."""
    for x in (a, b, c):
        if x not in (0, 1):
            raise ValueError("P^1 classes are 0 (fundamental class) or 1 (point)")
    if d < 0:
        raise ValueError("degree must be non-negative")
    return 1 if a + b + c == 1 + 2 * d else 0
