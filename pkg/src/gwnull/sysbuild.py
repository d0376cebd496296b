"""Polynomial systems whose satisfiability at generic parameters decides
nonvanishing of a complete-flag GW invariant for one degree split.

Unknowns: coefficients ``a`` of the matrices ``M_h(s, t)``, full-rank
witnesses ``B_h, C_h``, rank-factorization witnesses ``X, Y`` and the point
``(s, t)``.  Parameters: entries of the generic ``n x n`` matrices ``U, V, W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .algebra import PARAMETER, QQ, Polynomial, PolySystem, Registry
from .algebra.io import format_poly, format_system
from .splits import DegreeSplit, iter_splits
from .symgrp import Permutation, RankTable, rank_table
from .woodward import CompleteInstance, GWInstance, reduce_to_complete, window_positions

__all__ = [
    "SIGMAS",
    "EVAL_POINTS",
    "BLOCK",
    "BuildOptions",
    "MatrixOfPolys",
    "SystemBundle",
    "HnpeInstance",
    "build_M",
    "eval_M",
    "build_fullrank_eqs",
    "build_rank_eqs",
    "assemble_system",
    "expected_counts",
    "system_size",
    "export_hnpe",
]

SIGMAS = ("u", "v", "w")
# evaluation point (s, t) for each of the three marked points 0, 1, infinity
EVAL_POINTS = {"u": (0, 1), "v": (1, 1), "w": (1, 0)}
PARAM_NAMES = {"u": "alpha", "v": "beta", "w": "gamma"}

# monomial-order blocks: lower ranks higher
BLOCK = {"x": 0, "y": 0, "b": 1, "c": 1, "a": 2, "st": 3, "param": 4}

# parameter matrices introduced by ``normalize``
NORM_GROUPS = ("lam", "kappa", "ell")

FULLRANK_MODES = ("two_sided", "right_inverse")

FAMILIES = ("fullrank", "anchor_u", "anchor_v", "anchor_w", "chain_u", "chain_v", "chain_w", "gauge")


@dataclass(frozen=True)
class BuildOptions:
    """``prune`` drops rank conditions that hold for every matrix;
    ``chain_elim`` anchors each binding factorization directly on the
    product ``M_i(pt)...M_{n-1}(pt) P_j``; ``shared_st`` uses one ``(s, t)``
    for every ``h``.  ``fullrank`` selects how full rank of ``M_h(s, t)`` is
    certified: ``"two_sided"`` asks for ``B_h M_h C_h = [Id | 0]``,
    ``"right_inverse"`` asks for ``M_h K_h = Id``.  Both hold for exactly
    the same ``M_h``; the second is much smaller.  ``gauge_fix`` replaces
    the square factor of every vacuous rank witness by the identity, which
    leaves satisfiability unchanged (only matters when ``prune`` is off).

    ``normalize`` cuts the remaining gauge freedom with random linear
    conditions whose coefficients are extra parameters: ``Lam X = Id_r`` for
    every witness ``X Y`` with two free factors, ``ell K_h = 0`` for the
    right inverse, and ``K_h`` itself a parameter matrix when every bundle
    is trivial (``D = 0``, where ``M_h -> g_h M_h g_{h+1}^{-1}`` is a
    symmetry).  At generic parameters satisfiability is unchanged; the
    Groebner runs become dramatically cheaper on satisfiable systems."""

    prune: bool = True
    chain_elim: bool = False
    shared_st: bool = True
    fullrank: str = "two_sided"
    gauge_fix: bool = False
    normalize: bool = False

    def __post_init__(self):
        if self.fullrank not in FULLRANK_MODES:
            raise ValueError(f"fullrank must be one of {FULLRANK_MODES}, got {self.fullrank!r}")

    def to_json(self) -> dict:
        return {
            "prune": self.prune,
            "chain_elim": self.chain_elim,
            "shared_st": self.shared_st,
            "fullrank": self.fullrank,
            "gauge_fix": self.gauge_fix,
            "normalize": self.normalize,
        }


@dataclass
class MatrixOfPolys:
    rows: int
    cols: int
    entries: list[list[Polynomial]]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix entries do not match declared dimensions")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "MatrixOfPolys") -> "MatrixOfPolys":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = Polynomial.zero(self._registry(other), QQ)
                row.append(acc)
            out.append(row)
        return MatrixOfPolys(self.rows, other.cols, out)

    def _registry(self, other=None) -> Registry:
        for m in (self, other):
            if m is not None:
                for r in m.entries:
                    for e in r:
                        return e.registry
        raise ValueError("empty matrix has no registry")

    def columns(self, k: int) -> "MatrixOfPolys":
        return MatrixOfPolys(self.rows, k, [r[:k] for r in self.entries])

    def map(self, fn) -> "MatrixOfPolys":
        return MatrixOfPolys(self.rows, self.cols, [[fn(e) for e in r] for r in self.entries])

    def flat(self) -> list[Polynomial]:
        return [e for r in self.entries for e in r]


def _var_matrix(reg: Registry, prefix: str, rows: int, cols: int, *, kind="unknown", block=0, group="") -> MatrixOfPolys:
    ents = []
    for i in range(1, rows + 1):
        row = []
        for j in range(1, cols + 1):
            vid = reg.get_or_add(f"{prefix}_{i}_{j}", kind=kind, block=block, group=group)
            row.append(Polynomial.variable(reg, vid))
        ents.append(row)
    return MatrixOfPolys(rows, cols, ents)


def _st(reg: Registry, h: int, shared: bool) -> tuple[Polynomial, Polynomial]:
    suffix = "" if shared else str(h)
    s = reg.get_or_add("s" + suffix, block=BLOCK["st"], group="s")
    t = reg.get_or_add("t" + suffix, block=BLOCK["st"], group="t")
    return Polynomial.variable(reg, s), Polynomial.variable(reg, t)


def build_M(h: int, split: DegreeSplit, registry: Registry, *, shared_st: bool = True) -> MatrixOfPolys:
    """``h x (h+1)`` matrix with generic binary forms of degree
    ``d_{h,i} - d_{h+1,j}`` (zero where that is negative)."""
    n = split.n
    if not 1 <= h <= n - 1:
        raise ValueError(f"h must be in [1, {n - 1}]")
    s, t = _st(registry, h, shared_st)
    zero = Polynomial.zero(registry)
    ents = []
    for i in range(1, h + 1):
        row = []
        for j in range(1, h + 2):
            L = split.d(h, i) - split.d(h + 1, j)
            if L < 0:
                row.append(zero)
                continue
            acc = zero
            for m in range(L + 1):
                vid = registry.get_or_add(f"a{h}_{i}_{j}_{m}", block=BLOCK["a"], group="a")
                acc = acc + Polynomial.variable(registry, vid) * s**m * t ** (L - m)
            row.append(acc)
        ents.append(row)
    return MatrixOfPolys(h, h + 1, ents)


def eval_M(M: MatrixOfPolys, point: tuple[int, int], h: int | None = None, *, shared_st: bool = True) -> MatrixOfPolys:
    """Substitute ``(s, t) = point``; entries become linear in ``a``."""
    reg = M._registry()
    suffix = "" if shared_st or h is None else str(h)
    ids = {reg.id("s" + suffix): point[0], reg.id("t" + suffix): point[1]}
    return M.map(lambda e: e.substitute(ids))


def _norm_matrix(reg: Registry, prefix: str, rows: int, cols: int, group: str) -> MatrixOfPolys:
    return _var_matrix(reg, prefix, rows, cols, kind=PARAMETER, block=BLOCK["param"], group=group)


def build_fullrank_eqs(
    M_list: Sequence[MatrixOfPolys],
    registry: Registry,
    mode: str = "two_sided",
    normalize: bool = False,
    trivial: bool = False,
) -> list[tuple[str, Polynomial]]:
    """``B_h M_h(s, t) C_h = [Id_h | 0]`` entrywise for every ``h``, or
    ``M_h(s, t) K_h = Id_h`` in ``right_inverse`` mode.

    ``normalize`` (right_inverse only) pins ``K_h``: a parameter matrix when
    ``trivial`` (all degrees zero), else one row condition ``ell K_h = 0``.
    Returns ``(family, polynomial)`` pairs.
    """
    eqs = []
    for h, M in enumerate(M_list, start=1):
        if mode == "right_inverse":
            if normalize and trivial:
                K = _norm_matrix(registry, f"kappa{h}", h + 1, h, "kappa")
            else:
                K = _var_matrix(registry, f"c{h}", h + 1, h, block=BLOCK["c"], group="c")
            P = M @ K
            for i in range(h):
                for j in range(h):
                    eqs.append(("fullrank", P[i, j] - (1 if i == j else 0)))
            if normalize and not trivial:
                ell = _norm_matrix(registry, f"ell{h}", 1, h + 1, "ell")
                eqs += [("gauge", e) for e in (ell @ K).flat()]
            continue
        B = _var_matrix(registry, f"b{h}", h, h, block=BLOCK["b"], group="b")
        C = _var_matrix(registry, f"c{h}", h + 1, h + 1, block=BLOCK["c"], group="c")
        P = (B @ M) @ C
        for i in range(h):
            for j in range(h + 1):
                target = 1 if i == j else 0
                eqs.append(("fullrank", P[i, j] - target))
    return eqs


def _param_matrix(reg: Registry, sigma: str, n: int) -> MatrixOfPolys:
    return _var_matrix(reg, PARAM_NAMES[sigma], n, n, kind=PARAMETER, block=BLOCK["param"], group=PARAM_NAMES[sigma])


def _identity(reg: Registry, k: int) -> MatrixOfPolys:
    one, zero = Polynomial.constant(reg, 1), Polynomial.zero(reg)
    return MatrixOfPolys(k, k, [[one if a == b else zero for b in range(k)] for a in range(k)])


def _witness(
    reg: Registry, sigma: str, i: int, j: int, r: int, gauge: bool = False, normalize: bool = False
) -> tuple[MatrixOfPolys, list[Polynomial]]:
    """``X Y`` with ``X`` of size ``i x r`` and ``Y`` of size ``r x j``, plus
    normalization equations.

    With ``gauge`` and ``r = min(i, j)`` the square factor is the identity:
    ``X Y`` then still ranges over every ``i x j`` matrix.  With
    ``normalize`` and two free factors, ``Lam X = Id_r`` for a parameter
    matrix ``Lam``: any rank-``<= r`` product has a factorization with ``X``
    of full column rank, and ``X -> X g`` moves it onto that slice.
    """
    if r == 0:
        return _zero_matrix(reg, i, j), []
    if gauge and r == min(i, j):
        X = _identity(reg, i) if r == i else _var_matrix(reg, f"x{sigma}{i}_{j}", i, r, block=BLOCK["x"], group="x")
        Y = _identity(reg, j) if r != i else _var_matrix(reg, f"y{sigma}{i}_{j}", r, j, block=BLOCK["y"], group="y")
        return X @ Y, []
    X = _var_matrix(reg, f"x{sigma}{i}_{j}", i, r, block=BLOCK["x"], group="x")
    Y = _var_matrix(reg, f"y{sigma}{i}_{j}", r, j, block=BLOCK["y"], group="y")
    extra = []
    if normalize:
        lam = _norm_matrix(reg, f"lam{sigma}{i}_{j}", r, i, "lam")
        extra = _diff(lam @ X, _identity(reg, r))
    return X @ Y, extra


def _zero_matrix(reg: Registry, rows: int, cols: int) -> MatrixOfPolys:
    z = Polynomial.zero(reg)
    return MatrixOfPolys(rows, cols, [[z] * cols for _ in range(rows)])


def _diff(A: MatrixOfPolys, B: MatrixOfPolys) -> list[Polynomial]:
    return [a - b for a, b in zip(A.flat(), B.flat())]


def build_rank_eqs(
    inst: CompleteInstance,
    M_list: Sequence[MatrixOfPolys],
    registry: Registry,
    options: BuildOptions = BuildOptions(),
) -> list[tuple[str, Polynomial]]:
    """Anchoring and chain equations for the rank conditions at 0, 1, infinity.

    Returns ``(family, polynomial)`` pairs.
    """
    n = inst.n
    out: list[tuple[str, Polynomial]] = []
    for sigma, perm in zip(SIGMAS, inst.perms()):
        rt = rank_table(perm)
        P = _param_matrix(registry, sigma, n)
        pt = EVAL_POINTS[sigma]
        Mpt = {i: eval_M(M_list[i - 1], pt, i, shared_st=options.shared_st) for i in range(1, n)}
        g, nz = options.gauge_fix, options.normalize
        if not options.prune and not options.chain_elim:
            out.extend(_reference_rank_eqs(sigma, rt, P, Mpt, registry, n, g, nz))
        elif options.chain_elim:
            out.extend(_chain_elim_rank_eqs(sigma, rt, P, Mpt, registry, n, options.prune, g, nz))
        else:
            out.extend(_pruned_rank_eqs(sigma, rt, P, Mpt, registry, n, nz))
    return out


def _binding(rt: RankTable, i: int, j: int) -> bool:
    return rt(i, j) < min(i, j)


def _reference_rank_eqs(sigma, rt, P, Mpt, reg, n, gauge=False, normalize=False):
    R = {}
    eqs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            R[i, j], extra = _witness(reg, sigma, i, j, rt(i, j), gauge, normalize)
            eqs += [("gauge", e) for e in extra]
    for j in range(1, n + 1):
        eqs += [("anchor_" + sigma, e) for e in _diff(R[n, j], P.columns(j))]
    for i in range(2, n + 1):
        for j in range(1, n + 1):
            eqs += [("chain_" + sigma, e) for e in _diff(R[i - 1, j], Mpt[i - 1] @ R[i, j])]
    return [(f, e) for f, e in eqs if not e.is_zero()]


def _pruned_rank_eqs(sigma, rt, P, Mpt, reg, n, normalize=False):
    eqs = []
    for j in range(1, n + 1):
        # R_{n,j} is the parameter block itself; walk the chain downward
        R = P.columns(j)
        for i in range(n - 1, 0, -1):
            forced = Mpt[i] @ R
            if _binding(rt, i, j):
                R, extra = _witness(reg, sigma, i, j, rt(i, j), normalize=normalize)
                eqs += [("chain_" + sigma, e) for e in _diff(R, forced)]
                eqs += [("gauge", e) for e in extra]
            else:
                R = forced
    return [(f, e) for f, e in eqs if not e.is_zero()]


def _chain_elim_rank_eqs(sigma, rt, P, Mpt, reg, n, prune, gauge=False, normalize=False):
    eqs = []
    for j in range(1, n + 1):
        prod = P.columns(j)
        for i in range(n - 1, 0, -1):
            prod = Mpt[i] @ prod
            if prune and not _binding(rt, i, j):
                continue
            R, extra = _witness(reg, sigma, i, j, rt(i, j), gauge, normalize)
            eqs += [("chain_" + sigma, e) for e in _diff(R, prod)]
            eqs += [("gauge", e) for e in extra]
    return [(f, e) for f, e in eqs if not e.is_zero()]


@dataclass
class SystemBundle:
    instance: CompleteInstance
    split: DegreeSplit
    options: BuildOptions
    registry: Registry
    equations: list[Polynomial]
    families: list[str]
    M_list: list[MatrixOfPolys] = field(repr=False)

    @property
    def parameters(self) -> list[int]:
        return self.registry.parameters()

    def system(self) -> PolySystem:
        return PolySystem(self.registry, list(self.equations), self.parameters, list(self.families))

    def counts(self) -> dict[str, int]:
        out = {k: 0 for k in ("a", "b", "c", "x", "y", "s", "t", "alpha", "beta", "gamma")}
        for g in self.registry.groups:
            out[g] = out.get(g, 0) + 1
        return out

    def family_sizes(self) -> dict[str, int]:
        out = {f: 0 for f in FAMILIES}
        for f in self.families:
            out[f] += 1
        return out

    def export_text(self) -> str:
        return format_system(self.equations, self.registry, QQ)

    def sidecar(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "split": self.split.to_json(),
            "options": self.options.to_json(),
            "variables": {
                nm: {"class": g, "kind": k}
                for nm, g, k in zip(self.registry.names, self.registry.groups, self.registry.kinds)
            },
            "families": list(self.families),
        }


def assemble_system(inst: CompleteInstance, split: DegreeSplit, options: BuildOptions = BuildOptions()) -> SystemBundle:
    if split.n != inst.n:
        raise ValueError("split and instance disagree on n")
    if split.row_sums() != inst.dhat:
        raise ValueError(f"split row sums {split.row_sums()} do not match dhat {inst.dhat}")
    reg = Registry()
    n = inst.n
    # parameters first so every bundle registers all of U, V, W
    for sigma in SIGMAS:
        _param_matrix(reg, sigma, n)
    M_list = [build_M(h, split, reg, shared_st=options.shared_st) for h in range(1, n)]
    eqs, fams = [], []
    trivial = not any(inst.dhat)
    pairs = build_fullrank_eqs(M_list, reg, options.fullrank, options.normalize, trivial)
    for fam, e in pairs + build_rank_eqs(inst, M_list, reg, options):
        eqs.append(e)
        fams.append(fam)
    return SystemBundle(inst, split, options, reg, eqs, fams, M_list)


def expected_counts(inst: CompleteInstance, split: DegreeSplit, options: BuildOptions = BuildOptions()) -> dict[str, int]:
    """Closed-form variable counts, computed without building anything."""
    n = inst.n
    a = 0
    for h in range(1, n):
        for i in range(1, h + 1):
            for j in range(1, h + 2):
                L = split.d(h, i) - split.d(h + 1, j)
                if L >= 0:
                    a += L + 1
    x = y = lam = 0
    for perm in inst.perms():
        rt = rank_table(perm)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if options.prune or options.chain_elim:
                    if i == n or (options.prune and not _binding(rt, i, j)):
                        continue
                r = rt(i, j)
                if options.gauge_fix and r and r == min(i, j):
                    x += 0 if r == i else i * r
                    y += r * j if r == i else 0
                    continue
                x += i * r
                y += r * j
                if options.normalize:
                    lam += r * i
    st = 1 if options.shared_st else n - 1
    ri = options.fullrank == "right_inverse"
    pinned = ri and options.normalize and not any(inst.dhat)
    out = {
        "a": a,
        "b": 0 if ri else sum(h * h for h in range(1, n)),
        "c": 0 if pinned else sum((h + 1) * (h if ri else h + 1) for h in range(1, n)),
        "x": x,
        "y": y,
        "s": st,
        "t": st,
        "alpha": n * n,
        "beta": n * n,
        "gamma": n * n,
    }
    if lam:
        out["lam"] = lam
    if pinned:
        out["kappa"] = sum((h + 1) * h for h in range(1, n))
    elif ri and options.normalize:
        out["ell"] = sum(h + 1 for h in range(1, n))
    return out


def system_size(polys: Sequence[Polynomial]) -> int:
    """Symbol count of the dense encoding: for every term, the bit length of
    its coefficient plus its degree."""
    total = 0
    for p in polys:
        for m, c in p.as_dict().items():
            total += max(abs(int(c)).bit_length(), 1) + sum(e for _, e in m)
    return total


@dataclass
class HnpeInstance:
    polys: list[str]
    templates: dict[str, str]
    exponent_vars: list[str]
    linear_constraints: list[dict]
    M: int
    parameters: list[str]

    def to_json(self) -> dict:
        return {
            "polys": self.polys,
            "templates": self.templates,
            "exponent_vars": self.exponent_vars,
            "linear_constraints": self.linear_constraints,
            "M": self.M,
            "parameters": self.parameters,
        }


def _t_constraints(inst: GWInstance, zvars: list[str]) -> list[dict]:
    """Rows ``a . z <= b`` for the integer system on (dhat, d_{h,i})."""
    n, shape = inst.n, inst.shape
    idx = {z: k for k, z in enumerate(zvars)}
    rows = []

    def row(coeffs: dict[str, int], b: int):
        a = [0] * len(zvars)
        for nm, c in coeffs.items():
            a[idx[nm]] += c
        rows.append({"a": a, "b": b})

    def dh(i):
        return f"dhat_{i}"

    for h, x in zip(shape.a, inst.degree):
        row({dh(h): 1}, x)
        row({dh(h): -1}, -x)
    for i, j in window_positions(shape):
        expr: dict[str, int] = {}
        for k, c in ((i - 1, -1), (i, 1), (j, 1), (j + 1, -1)):
            if 1 <= k <= n - 1:
                expr[dh(k)] = expr.get(dh(k), 0) + c
        row(expr, 0)
        row({k: -c for k, c in expr.items()}, 1)
    for i in range(1, n):
        expr = {f"d_{i}_{j}": 1 for j in range(1, i + 1)}
        expr[dh(i)] = -1
        row(expr, 0)
        row({k: -c for k, c in expr.items()}, 0)
        row({dh(i): -1}, 0)
        for j in range(1, i + 1):
            row({f"d_{i}_{j}": -1}, 0)
            if j < i:
                row({f"d_{i}_{j}": 1, f"d_{i}_{j + 1}": -1}, 0)
    return rows


def export_hnpe(inst: GWInstance, options: BuildOptions = BuildOptions()) -> HnpeInstance:
    """Serialize the integer constraints and the exponent-templated system.

    Entries of ``M_h`` are opaque symbols ``p{h}_{i}_{j}``; their templates
    expand to ``sum_{m=0}^{L} a{h}_{i}_{j}_{m} s^m t^(L-m)`` with
    ``L = z(d_{h,i}) - z(d_{h+1,j})``.  With all degrees zero no exponent
    variables remain and the concrete zero-split system is emitted.
    """
    # the export is the literal system; gauge slices are a decider device
    options = replace(options, normalize=False)
    comp = reduce_to_complete(inst)
    n = comp.n
    D = sum(inst.degree)
    params = [f"{PARAM_NAMES[s]}_{i}_{j}" for s in SIGMAS for i in range(1, n + 1) for j in range(1, n + 1)]
    if D == 0:
        bundle = assemble_system(comp, DegreeSplit.zero(n), options)
        return HnpeInstance([format_poly(p) for p in bundle.equations], {}, [], [], 0, params)

    zvars = [f"dhat_{i}" for i in range(1, n)] + [f"d_{h}_{i}" for h in range(1, n) for i in range(1, h + 1)]
    templates = {}
    reg = Registry()
    for sigma in SIGMAS:
        _param_matrix(reg, sigma, n)
    M_list, Mpts = [], {pt: [] for pt in EVAL_POINTS.values()}
    for h in range(1, n):
        ents = []
        pt_ents = {pt: [] for pt in Mpts}
        for i in range(1, h + 1):
            row = []
            pt_rows = {pt: [] for pt in Mpts}
            for j in range(1, h + 2):
                upper = f"d_{h}_{i}" + ("" if h + 1 == n else f" - d_{h + 1}_{j}")
                name = f"p{h}_{i}_{j}"
                templates[name] = f"sum_{{m=0}}^{{{upper}}} a{h}_{i}_{j}_m * s^m * t^({upper} - m)"
                row.append(Polynomial.variable(reg, reg.get_or_add(f"{name}(s,t)", block=BLOCK["a"])))
                for pt in Mpts:
                    vid = reg.get_or_add(f"{name}({pt[0]},{pt[1]})", block=BLOCK["a"])
                    pt_rows[pt].append(Polynomial.variable(reg, vid))
            ents.append(row)
            for pt in Mpts:
                pt_ents[pt].append(pt_rows[pt])
        M_list.append(MatrixOfPolys(h, h + 1, ents))
        for pt in Mpts:
            Mpts[pt].append(MatrixOfPolys(h, h + 1, pt_ents[pt]))
    eqs = [e for _, e in build_fullrank_eqs(M_list, reg, options.fullrank)]
    for sigma, perm in zip(SIGMAS, comp.perms()):
        rt = rank_table(perm)
        P = _param_matrix(reg, sigma, n)
        Mpt = {i: Mpts[EVAL_POINTS[sigma]][i - 1] for i in range(1, n)}
        if not options.prune and not options.chain_elim:
            fam = _reference_rank_eqs(sigma, rt, P, Mpt, reg, n)
        elif options.chain_elim:
            fam = _chain_elim_rank_eqs(sigma, rt, P, Mpt, reg, n, options.prune)
        else:
            fam = _pruned_rank_eqs(sigma, rt, P, Mpt, reg, n)
        eqs.extend(e for _, e in fam)
    return HnpeInstance(
        [format_poly(p) for p in eqs],
        templates,
        zvars,
        _t_constraints(inst, zvars),
        D,
        params,
    )
