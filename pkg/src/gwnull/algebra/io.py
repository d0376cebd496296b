"""Text format for polynomial systems.

::

    vars: a1,a2,x
    field: GF(1000000007)
    3*a1^2*x + -1*a2 + 5
    0

One polynomial per line; terms are ``c*v1^e1*...*vk^ek`` joined by ``" + "``
and listed in decreasing monomial order.  Coefficients are exact integers
(``p/q`` over QQ).  ``^1`` is omitted on output and accepted on input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .field import Field
from .poly import PolySystem, Polynomial, Registry

__all__ = ["format_poly", "parse_poly", "format_system", "parse_system"]


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    names = p.registry.names
    parts = []
    for m, c in p.terms:
        factors = [_format_coeff(c)]
        for v, e in sorted(m, key=lambda t: p.registry.rank_key(t[0])):
            factors.append(names[v] if e == 1 else f"{names[v]}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def _parse_coeff(tok: str):
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    return int(tok)


def parse_poly(text: str, registry: Registry, f: Field, *, register: bool = False) -> Polynomial:
    text = text.strip()
    if not text or text == "0":
        return Polynomial.zero(registry, f)
    d: dict = {}
    for term in text.split(" + "):
        factors = term.strip().split("*")
        coeff = 1
        expo: dict[int, int] = {}
        for k, fac in enumerate(factors):
            fac = fac.strip()
            if k == 0 and (fac[:1].isdigit() or fac[:1] == "-"):
                coeff = _parse_coeff(fac)
                continue
            name, _, e = fac.partition("^")
            if name not in registry:
                if not register:
                    raise ValueError(f"unknown variable {name!r}")
                registry.add(name)
            vid = registry.id(name)
            expo[vid] = expo.get(vid, 0) + (int(e) if e else 1)
        mono = tuple(sorted(expo.items()))
        d[mono] = d.get(mono, 0) + coeff
    return Polynomial(registry, f, d)


def format_system(polys: Iterable[Polynomial], registry: Registry, f: Field) -> str:
    lines = ["vars: " + ",".join(registry.names), f"field: {f}"]
    lines.extend(format_poly(p) for p in polys)
    return "\n".join(lines) + "\n"


def parse_system(text: str, registry: Registry | None = None) -> PolySystem:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("vars:") or not lines[1].startswith("field:"):
        raise ValueError("system text must start with 'vars:' and 'field:' header lines")
    names = [s.strip() for s in lines[0][len("vars:"):].split(",") if s.strip()]
    f = Field.parse(lines[1][len("field:"):])
    if registry is None:
        registry = Registry.from_names(names)
    else:
        for nm in names:
            if nm not in registry:
                registry.add(nm)
    polys = [parse_poly(ln, registry, f) for ln in lines[2:]]
    params = [registry.id(nm) for nm in names if registry.kinds[registry.id(nm)] == "parameter"]
    return PolySystem(registry, polys, params)
