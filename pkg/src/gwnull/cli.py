"""Command-line front end: ``gwnull <subcommand> ...``.

Exit codes: 0 decided (or success), 2 inconclusive (or self-test
failures), 1 input error.  All documents go to stdout as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field, replace
from itertools import product
from pathlib import Path
from typing import Callable, Sequence

from .oracles import gw_divisor, gw_zero, p1_gw, quantum_monk, simple_transposition, struct_const
from .pipeline import (
    INCONCLUSIVE,
    NONVANISHING,
    VANISHING,
    DeciderConfig,
    decide,
    dimension_check,
)
from .splits import SplitCapExceeded, enumerate_splits, DegreeSplit
from .symgrp import FlagShape, Permutation, all_permutations, length
from .sysbuild import BuildOptions, assemble_system, export_hnpe
from .woodward import CompleteInstance, GWInstance, LiftError, correction_element, lift_degrees, reduce_to_complete

__all__ = [
    "InstanceError",
    "parse_instance",
    "serialize_instance",
    "CaseRecord",
    "RunReport",
    "suite_degree_zero",
    "suite_divisor",
    "suite_p1",
    "selftest",
    "main",
]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2


class InstanceError(ValueError):
    def __init__(self, field_name: str, reason: str):
        super().__init__(f"{field_name}: {reason}")
        self.field = field_name
        self.reason = reason


def _perm_field(doc: dict, name: str, n: int) -> Permutation:
    raw = doc.get(name)
    if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
        raise InstanceError(name, "must be a list of integers")
    if len(raw) != n:
        raise InstanceError(name, f"has length {len(raw)} but n={n}")
    if sorted(raw) != list(range(1, n + 1)):
        raise InstanceError(name, f"{raw} is not a bijection of 1..{n}")
    return Permutation(tuple(raw))


def parse_instance(text: str) -> GWInstance:
    """Validated instance from JSON ``{"n", "a", "d", "u", "v", "w"}``.

    ``a`` may be omitted for the complete flag.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError("json", f"malformed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InstanceError("json", "top level must be an object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceError("n", "must be an integer")
    if n < 2:
        raise InstanceError("n", f"must be at least 2, got {n}")
    a = doc.get("a", list(range(1, n)))
    if not isinstance(a, list) or not all(isinstance(x, int) for x in a):
        raise InstanceError("a", "must be a list of integers")
    if not a:
        raise InstanceError("a", "must be non-empty")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise InstanceError("a", f"{a} is not strictly increasing")
    if a[0] <= 0 or a[-1] >= n:
        raise InstanceError("a", f"entries must lie strictly between 0 and n={n}")
    d = doc.get("d")
    if not isinstance(d, list) or not all(isinstance(x, int) for x in d):
        raise InstanceError("d", "must be a list of integers")
    if len(d) != len(a):
        raise InstanceError("d", f"has length {len(d)} but a has length {len(a)}")
    if any(x < 0 for x in d):
        raise InstanceError("d", f"entries must be non-negative, got {d}")
    perms = [_perm_field(doc, name, n) for name in ("u", "v", "w")]
    return GWInstance(FlagShape(n, tuple(a)), tuple(d), *perms)


def serialize_instance(inst: GWInstance) -> str:
    return json.dumps(inst.to_json(), sort_keys=True)


# ---------------------------------------------------------------- suites


@dataclass
class SuiteCase:
    suite: str
    instance: GWInstance
    source: str  # oracle op that produced the expectation
    value: int


def _complete(u, v, w, d) -> GWInstance:
    return GWInstance.complete(Permutation(tuple(u)), Permutation(tuple(v)), Permutation(tuple(w)), tuple(d))


def suite_degree_zero(n: int = 3, zero_oracle: Callable = gw_zero) -> list[SuiteCase]:
    """All degree-zero triples of ``S_n`` whose lengths add up to ``dim Fl(n)``."""
    perms = list(all_permutations(n))
    top = n * (n - 1) // 2
    out = []
    for u, v, w in product(perms, repeat=3):
        if length(u) + length(v) + length(w) == top:
            out.append(SuiteCase("degree_zero", _complete(u, v, w, (0,) * (n - 1)), "struct_const", zero_oracle(u, v, w)))
    return out


def suite_divisor(n: int = 3, total: int = 1, divisor_oracle: Callable = gw_divisor) -> list[SuiteCase]:
    """Middle class ``s_r``, every complete degree with ``sum = total``,
    lengths matching the expected dimension."""
    perms = list(all_permutations(n))
    degrees = [d for d in product(range(total + 1), repeat=n - 1) if sum(d) == total]
    out = []
    for d in degrees:
        target = n * (n - 1) // 2 + 2 * sum(d)
        for r in range(1, n):
            s = simple_transposition(n, r)
            for u, w in product(perms, repeat=2):
                if length(u) + 1 + length(w) == target:
                    val = divisor_oracle(u, r, w, d)
                    out.append(SuiteCase("divisor", _complete(u, s, w, d), "gw_divisor", val))
    return out


def suite_p1(max_degree: int = 2, p1_oracle: Callable = p1_gw) -> list[SuiteCase]:
    ident, pt = (1, 2), (2, 1)
    out = []
    for classes in product((0, 1), repeat=3):
        for d in range(max_degree + 1):
            perms = [pt if c else ident for c in classes]
            out.append(SuiteCase("p1", _complete(*perms, (d,)), "p1_gw", p1_oracle(*classes, d)))
    return out


def suite_s4_sample(count: int = 6, zero_oracle: Callable = gw_zero) -> list[SuiteCase]:
    """Deterministic sample of degree-zero ``S_4`` triples, half of them nonzero."""
    cases = suite_degree_zero(4, zero_oracle)
    pos = [c for c in cases if c.value > 0]
    neg = [c for c in cases if c.value == 0]
    step_p = max(1, len(pos) // max(1, count // 2))
    step_n = max(1, len(neg) // max(1, count - count // 2))
    return pos[::step_p][: count // 2] + neg[::step_n][: count - count // 2]


# ---------------------------------------------------------------- reports


@dataclass
class CaseRecord:
    suite: str
    instance: dict
    expected_source: str
    expected: str
    got: str
    ok: bool
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "instance": self.instance,
            "expected_source": self.expected_source,
            "expected": self.expected,
            "got": self.got,
            "ok": self.ok,
        }
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d


@dataclass
class RunReport:
    suite: str
    seed: int
    cases: list[CaseRecord] = field(default_factory=list)
    skipped: int = 0

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.ok)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.ok)

    @property
    def total(self) -> int:
        return len(self.cases) + self.skipped

    def to_json(self, timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "counts": {"pass": self.passed, "fail": self.failed, "skip": self.skipped, "total": self.total},
            "cases": [c.to_json(timing) for c in self.cases],
        }


def _expected(value: int) -> str:
    return NONVANISHING if value > 0 else VANISHING


def run_cases(name: str, cases: Sequence[SuiteCase], cfg: DeciderConfig) -> RunReport:
    rep = RunReport(name, cfg.seed)
    for case in cases:
        t0 = time.perf_counter()
        got = decide(case.instance, cfg).decision
        exp = _expected(case.value)
        rep.cases.append(
            CaseRecord(case.suite, case.instance.to_json(), case.source, exp, got, got == exp, time.perf_counter() - t0)
        )
    return rep


def selftest(level: str = "quick", cfg: DeciderConfig | None = None, oracles: dict | None = None) -> RunReport:
    """``quick``: every ``S_3`` sweep plus ``P^1``.  ``full`` adds a sample of
    degree-zero ``S_4`` triples and exact-mode spot checks.

    ``oracles`` may override ``gw_zero``, ``gw_divisor`` or ``p1_gw``.
    """
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    cfg = cfg or DeciderConfig()
    o = {"gw_zero": gw_zero, "gw_divisor": gw_divisor, "p1_gw": p1_gw, **(oracles or {})}
    cases = suite_p1(p1_oracle=o["p1_gw"]) + suite_degree_zero(3, o["gw_zero"]) + suite_divisor(3, 1, o["gw_divisor"])
    rep = run_cases(f"selftest-{level}", cases, cfg)
    if level == "full":
        rep.cases += run_cases("s4", suite_s4_sample(zero_oracle=o["gw_zero"]), cfg).cases
        spot = [c for c in cases if c.suite != "p1"][::8]
        rep.cases += run_cases("exact", spot, replace(cfg, exact=True)).cases
    return rep


# ---------------------------------------------------------------- commands


def _read_arg(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip().startswith("{"):
        return arg
    return Path(arg).read_text()


def _load_instance(arg: str) -> GWInstance:
    try:
        text = _read_arg(arg)
    except OSError as e:
        raise InstanceError("file", str(e)) from None
    try:
        return parse_instance(text)
    except InstanceError:
        raise
    except ValueError as e:
        raise InstanceError("instance", str(e)) from None


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("GWNULL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InstanceError("GWNULL_SEED", f"not an integer: {env!r}") from None
    return 0


def _build_options(args) -> BuildOptions:
    return BuildOptions(
        prune=not args.no_prune,
        chain_elim=args.chain_elim,
        fullrank=args.fullrank,
        gauge_fix=args.gauge_fix,
        normalize=not args.no_normalize,
    )


def _config(args) -> DeciderConfig:
    kw = dict(seed=_seed(args), build=_build_options(args))
    if args.trials is not None:
        kw["trials"] = args.trials
    if args.budget is not None:
        kw["pair_budget"] = args.budget
    if args.max_seconds is not None:
        kw["max_seconds"] = args.max_seconds
    if args.split_cap is not None:
        kw["split_cap"] = args.split_cap
    try:
        return DeciderConfig(**kw)
    except ValueError as e:
        raise InstanceError("config", str(e)) from None


def cmd_decide(args) -> int:
    inst = _load_instance(args.instance)
    cfg = _config(args)
    if args.exact:
        cfg = replace(cfg, exact=True)
    verdict = decide(inst, cfg)
    if args.emit_system:
        comp = verdict.complete
        # witness split if there is one, else the first split
        split = verdict.witness_split or enumerate_splits(comp.dhat, cfg.split_cap)[0]
        bundle = assemble_system(comp, split, cfg.build)
        Path(args.emit_system).write_text(bundle.export_text())
        Path(args.emit_system + ".json").write_text(json.dumps(bundle.sidecar(), indent=2))
    _emit(verdict.to_json(args.timing))
    return EXIT_INCONCLUSIVE if verdict.decision == INCONCLUSIVE else EXIT_OK


def cmd_lift(args) -> int:
    inst = _load_instance(args.instance)
    dhat = lift_degrees(inst.shape, inst.degree)
    _emit({"dhat": list(dhat), "w_prime": correction_element(inst.shape, dhat).to_json()})
    return EXIT_OK


def cmd_reduce(args) -> int:
    comp = reduce_to_complete(_load_instance(args.instance))
    _emit({**comp.to_json(), "dimension_ok": dimension_check(comp)})
    return EXIT_OK


def cmd_splits(args) -> int:
    comp = reduce_to_complete(_load_instance(args.instance))
    splits = enumerate_splits(comp.dhat, args.cap)
    _emit({"dhat": list(comp.dhat), "count": len(splits), "splits": [s.to_json() for s in splits]})
    return EXIT_OK


def cmd_build(args) -> int:
    comp = reduce_to_complete(_load_instance(args.instance))
    if args.split:
        split = DegreeSplit.from_json(json.loads(args.split))
    else:
        split = enumerate_splits(comp.dhat)[0]
    bundle = assemble_system(comp, split, _build_options(args))
    text = bundle.export_text()
    if args.output:
        Path(args.output).write_text(text)
        Path(args.output + ".json").write_text(json.dumps(bundle.sidecar(), indent=2))
        _emit({"equations": len(bundle.equations), "counts": bundle.counts(), "families": bundle.family_sizes()})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _json_arg(arg: str) -> dict:
    try:
        doc = json.loads(_read_arg(arg))
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceError("json", str(e)) from None
    if not isinstance(doc, dict):
        raise InstanceError("json", "top level must be an object")
    return doc


def _perm(doc: dict, name: str) -> Permutation:
    raw = doc.get(name)
    if not isinstance(raw, list):
        raise InstanceError(name, "missing or not a list")
    try:
        return Permutation(tuple(raw))
    except (ValueError, TypeError) as e:
        raise InstanceError(name, str(e)) from None


def cmd_oracle(args) -> int:
    doc = _json_arg(args.input)
    if args.kind == "struct-const":
        u, v, w = (_perm(doc, k) for k in ("u", "v", "w"))
        if not u.n == v.n == w.n:
            raise InstanceError("u,v,w", "permutations must have the same size")
        _emit({"u": u.to_json(), "v": v.to_json(), "w": w.to_json(), "c": struct_const(u, v, w)})
    elif args.kind == "quantum-monk":
        w = _perm(doc, "w")
        r = doc.get("r")
        if not isinstance(r, int) or not 1 <= r < w.n:
            raise InstanceError("r", f"must be an integer in [1, {w.n - 1}]")
        _emit({"r": r, "w": w.to_json(), "terms": quantum_monk(r, w).to_json()})
    else:
        inst = parse_instance(json.dumps(doc))
        if not inst.shape.is_complete:
            raise InstanceError("a", "the gw oracle needs a complete flag")
        d = tuple(inst.degree)
        if not any(d):
            val, src = gw_zero(inst.u, inst.v, inst.w), "struct_const"
        else:
            r = next((k for k in range(1, inst.n) if inst.v == simple_transposition(inst.n, k)), None)
            if r is None:
                raise InstanceError("v", "positive degree needs a simple transposition as middle class")
            val, src = gw_divisor(inst.u, r, inst.w, d), "gw_divisor"
        _emit({"instance": inst.to_json(), "value": val, "source": src})
    return EXIT_OK


def cmd_export_hnpe(args) -> int:
    h = export_hnpe(_load_instance(args.instance), _build_options(args))
    doc = h.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2))
        _emit({"polys": len(doc["polys"]), "exponent_vars": len(doc["exponent_vars"]), "M": doc["M"]})
    else:
        _emit(doc)
    return EXIT_OK


def cmd_selftest(args) -> int:
    cfg = _config(args)
    rep = selftest(args.level, cfg)
    _emit(rep.to_json(args.timing))
    return EXIT_OK if rep.failed == 0 else EXIT_INCONCLUSIVE


def _add_build_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-prune", action="store_true", help="emit vacuous rank conditions too")
    p.add_argument("--chain-elim", action="store_true", help="anchor factorizations on explicit chain products")
    p.add_argument("--fullrank", choices=("two_sided", "right_inverse"), default="right_inverse")
    p.add_argument("--gauge-fix", action="store_true", help="identity square factor on vacuous witnesses")
    p.add_argument("--no-normalize", action="store_true", help="keep the literal system without random gauge slices")


def _add_decider_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, default=None, help="odd number of trials per split (default 5)")
    p.add_argument("--seed", type=int, default=None, help="overrides GWNULL_SEED (default 0)")
    p.add_argument("--budget", type=int, default=None, help="S-pair budget per Groebner run")
    p.add_argument("--max-seconds", type=float, default=None, help="time limit per Groebner run")
    p.add_argument("--split-cap", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include timings (breaks byte-identical reruns)")
    _add_build_flags(p)


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse would exit 2, which means INCONCLUSIVE here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gwnull", description="Decide vanishing of three-point GW invariants of flag varieties.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide VANISHING / NONVANISHING")
    p.add_argument("instance", help="instance JSON file, inline JSON or '-'")
    p.add_argument("--exact", action="store_true", help="one trial over QQ")
    p.add_argument("--emit-system", metavar="OUT", default=None)
    _add_decider_flags(p)
    p.set_defaults(fn=cmd_decide)

    for name, fn, hlp in (
        ("lift", cmd_lift, "complete-flag degree lift and correction element"),
        ("reduce", cmd_reduce, "reduced complete-flag instance"),
    ):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("instance")
        p.set_defaults(fn=fn)

    p = sub.add_parser("splits", help="degree splits of the reduced instance")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_splits)

    p = sub.add_parser("build", help="polynomial system for one split")
    p.add_argument("instance")
    p.add_argument("--split", default=None, help="rows as JSON, e.g. '[[1],[0,0]]'")
    p.add_argument("-o", "--output", default=None)
    _add_build_flags(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("oracle", help="combinatorial reference values")
    p.add_argument("kind", choices=("struct-const", "quantum-monk", "gw"))
    p.add_argument("input", help="JSON document, file or '-'")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("export-hnpe", help="HNPE instance as JSON")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    _add_build_flags(p)
    p.set_defaults(fn=cmd_export_hnpe)

    p = sub.add_parser("selftest", help="run the oracle-vs-decider suites")
    p.add_argument("level", choices=("quick", "full"), nargs="?", default="quick")
    _add_decider_flags(p)
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InstanceError as e:
        print(f"gwnull: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (LiftError, SplitCapExceeded, ValueError) as e:
        print(f"gwnull: input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
