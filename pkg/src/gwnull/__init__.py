"""Deciding vanishing of three-point genus-zero Gromov-Witten invariants of
type A flag varieties through Nullstellensatz tests on polynomial systems."""

from .pipeline import INCONCLUSIVE, NONVANISHING, VANISHING, DeciderConfig, Verdict, decide, decide_exact, dimension_check
from .symgrp import FlagShape, Permutation
from .woodward import CompleteInstance, GWInstance, reduce_to_complete

__all__ = [
    "VANISHING",
    "NONVANISHING",
    "INCONCLUSIVE",
    "DeciderConfig",
    "Verdict",
    "decide",
    "decide_exact",
    "dimension_check",
    "FlagShape",
    "Permutation",
    "GWInstance",
    "CompleteInstance",
    "reduce_to_complete",
]
