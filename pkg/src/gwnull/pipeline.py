"""End-to-end decider for vanishing of three-point genus-zero GW invariants.

Flow: reduce to a complete flag, filter by dimension, enumerate degree
splits, build one system per split, specialize the parameters at random
points of ``GF(p)`` and run the Nullstellensatz test.  A split counts as
satisfiable when a strict majority of its trials say so.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field, replace
from math import comb
from typing import Sequence

from .algebra import (
    DEFAULT_PAIR_BUDGET,
    GF,
    QQ,
    BudgetExceeded,
    GroebnerStats,
    ideal_contains_one,
    random_prime,
    specialize,
)
from .algebra.field import PRIME_HIGH, PRIME_LOW
from .splits import DEFAULT_SPLIT_CAP, DegreeSplit, SplitCapExceeded, enumerate_splits
from .symgrp import length
from .sysbuild import BuildOptions, SystemBundle, assemble_system
from .woodward import CompleteInstance, GWInstance, reduce_to_complete

__all__ = [
    "VANISHING",
    "NONVANISHING",
    "INCONCLUSIVE",
    "SAT",
    "UNSAT",
    "BUDGET",
    "DeciderConfig",
    "TrialRecord",
    "Verdict",
    "dimension_check",
    "expected_dimension",
    "decide",
    "decide_exact",
    "decide_complete",
    "check_split",
]

VANISHING = "VANISHING"
NONVANISHING = "NONVANISHING"
INCONCLUSIVE = "INCONCLUSIVE"

# per-trial outcomes
SAT = "sat"
UNSAT = "unsat"
BUDGET = "budget"

DEFAULT_BUILD = BuildOptions(fullrank="right_inverse", normalize=True)


@dataclass(frozen=True)
class DeciderConfig:
    trials: int = 5
    seed: int = 0
    prime_low: int = PRIME_LOW
    prime_high: int = PRIME_HIGH
    pair_budget: int = DEFAULT_PAIR_BUDGET
    # wall-clock limit per Groebner run; None keeps runs reproducible
    max_seconds: float | None = None
    split_cap: int = DEFAULT_SPLIT_CAP
    exact: bool = False
    exact_range: int = 10**6
    exact_max_unknowns: int = 400
    build: BuildOptions = DEFAULT_BUILD

    def __post_init__(self):
        if self.trials < 1 or self.trials % 2 == 0:
            raise ValueError(f"trial count must be odd and positive, got {self.trials}")
        if not 2 <= self.prime_low < self.prime_high:
            raise ValueError("prime range must satisfy 2 <= low < high")
        if self.pair_budget < 1 or self.split_cap < 1:
            raise ValueError("budgets must be positive")

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "prime_range": [self.prime_low, self.prime_high],
            "pair_budget": self.pair_budget,
            "max_seconds": self.max_seconds,
            "split_cap": self.split_cap,
            "exact": self.exact,
            "exact_range": self.exact_range,
            "exact_max_unknowns": self.exact_max_unknowns,
            "build": self.build.to_json(),
        }


@dataclass
class TrialRecord:
    split_index: int
    trial: int
    prime: int | None  # None over QQ
    eval_seed: int
    outcome: str
    pairs: int = 0
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "split": self.split_index,
            "trial": self.trial,
            "prime": self.prime,
            "eval_seed": self.eval_seed,
            "outcome": self.outcome,
            "pairs": self.pairs,
        }
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d


@dataclass
class Verdict:
    decision: str
    instance: GWInstance | None = None
    complete: CompleteInstance | None = None
    witness_split: DegreeSplit | None = None
    trials: list[TrialRecord] = field(default_factory=list)
    splits_total: int = 0
    splits_checked: int = 0
    dimension_ok: bool | None = None
    note: str = ""
    detail: str = ""
    seed: int = 0
    seconds: float = 0.0
    config: dict | None = None

    def __post_init__(self):
        if self.decision == NONVANISHING and self.witness_split is None:
            raise ValueError("NONVANISHING verdict needs a witness split")

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "decision": self.decision,
            "instance": self.instance.to_json() if self.instance else None,
            "complete": self.complete.to_json() if self.complete else None,
            "dimension_ok": self.dimension_ok,
            "splits_total": self.splits_total,
            "splits_checked": self.splits_checked,
            "witness_split": self.witness_split.to_json() if self.witness_split else None,
            "trials": [t.to_json(timing) for t in self.trials],
            "note": self.note,
            "detail": self.detail,
            "seed": self.seed,
            "config": self.config,
        }
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d


def expected_dimension(inst: CompleteInstance) -> int:
    return comb(inst.n, 2) + 2 * sum(inst.dhat)


def dimension_check(inst: CompleteInstance) -> bool:
    return sum(length(p) for p in inst.perms()) == expected_dimension(inst)


def _derive_seed(*parts) -> int:
    h = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(h[:8], "big")


def _run_trial(bundle: SystemBundle, split_index: int, trial: int, cfg: DeciderConfig, salt: str) -> TrialRecord:
    eval_seed = _derive_seed(cfg.seed, salt, split_index, trial)
    rng = random.Random(eval_seed)
    sys = bundle.system()
    if cfg.exact:
        prime = None
        R = cfg.exact_range
        values = {v: rng.randint(-R, R) for v in sys.parameters}
        spec = specialize(sys, values, QQ)
    else:
        prime = random_prime(rng, cfg.prime_low, cfg.prime_high)
        values = {v: rng.randrange(prime) for v in sys.parameters}
        spec = specialize(sys, values, GF(prime))
    stats = GroebnerStats()
    t0 = time.perf_counter()
    try:
        unit = ideal_contains_one(spec, budget=cfg.pair_budget, max_seconds=cfg.max_seconds, stats=stats)
        outcome = UNSAT if unit else SAT
    except BudgetExceeded:
        outcome = BUDGET
    return TrialRecord(split_index, trial, prime, eval_seed, outcome, stats.pairs_reduced, time.perf_counter() - t0)


def check_split(
    inst: CompleteInstance,
    split: DegreeSplit,
    cfg: DeciderConfig,
    split_index: int = 0,
    salt: str = "decide",
) -> tuple[str, list[TrialRecord]]:
    """Majority vote over trials for one split: ``SAT``, ``UNSAT`` or ``BUDGET``
    (no strict majority).  Stops as soon as the majority is settled."""
    bundle = assemble_system(inst, split, cfg.build)
    T = 1 if cfg.exact else cfg.trials
    need = T // 2 + 1
    records = []
    tally = {SAT: 0, UNSAT: 0, BUDGET: 0}
    for k in range(T):
        rec = _run_trial(bundle, split_index, k, cfg, salt)
        records.append(rec)
        tally[rec.outcome] += 1
        if tally[SAT] >= need:
            return SAT, records
        if tally[UNSAT] >= need:
            return UNSAT, records
        # remaining trials cannot produce a majority any more
        if max(tally[SAT], tally[UNSAT]) + (T - k - 1) < need:
            break
    return BUDGET, records


def decide_complete(inst: CompleteInstance, cfg: DeciderConfig = DeciderConfig(), original: GWInstance | None = None) -> Verdict:
    t0 = time.perf_counter()
    if inst.n < 2:
        raise ValueError("n >= 2 is required")
    v = Verdict(INCONCLUSIVE, instance=original, complete=inst, seed=cfg.seed, config=cfg.to_json())
    v.dimension_ok = dimension_check(inst)
    if not v.dimension_ok:
        v.decision = VANISHING
        v.note = "dimension condition fails; no system built"
        v.seconds = time.perf_counter() - t0
        return v
    try:
        splits = enumerate_splits(inst.dhat, cfg.split_cap)
    except SplitCapExceeded as e:
        v.detail = f"split cap exceeded: {e}"
        v.seconds = time.perf_counter() - t0
        return v
    v.splits_total = len(splits)
    if cfg.exact:
        bundle = assemble_system(inst, splits[0], cfg.build)
        n_unknowns = len(bundle.registry.unknowns())
        if n_unknowns > cfg.exact_max_unknowns:
            v.detail = f"exact mode limited to {cfg.exact_max_unknowns} unknowns, system has {n_unknowns}"
            v.seconds = time.perf_counter() - t0
            return v
    undecided = []
    for idx, split in enumerate(splits):
        outcome, records = check_split(inst, split, cfg, idx)
        v.trials.extend(records)
        v.splits_checked += 1
        if outcome == SAT:
            v.decision = NONVANISHING
            v.witness_split = split
            break
        if outcome == BUDGET:
            undecided.append(idx)
    else:
        if undecided:
            v.detail = f"no majority for splits {undecided} (budget exhausted or trials split)"
        else:
            v.decision = VANISHING
    if v.decision == NONVANISHING:
        v.note = "Monte Carlo: satisfiable at random parameters for a strict majority of trials"
    elif v.decision == VANISHING:
        v.note = "Monte Carlo: every split unsatisfiable for a strict majority of trials"
    if cfg.exact:
        v.note += "; exact mode uses one integer evaluation, which is non-generic with small probability"
    v.seconds = time.perf_counter() - t0
    return v


def decide(inst: GWInstance, cfg: DeciderConfig = DeciderConfig()) -> Verdict:
    if inst.n < 2:
        raise ValueError("n >= 2 is required")
    comp = reduce_to_complete(inst)
    return decide_complete(comp, cfg, original=inst)


def decide_exact(inst: GWInstance, cfg: DeciderConfig = DeciderConfig()) -> Verdict:
    return decide(inst, replace(cfg, exact=True))
