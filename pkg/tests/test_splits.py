from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwnull.splits import (
    DegreeSplit,
    SplitCapExceeded,
    check_t_constraints,
    count_splits,
    enumerate_splits,
    increasing_compositions,
    partitions_at_most,
)
from gwnull.symgrp import FlagShape
from gwnull.woodward import lift_degrees


def test_examples():
    assert enumerate_splits((0, 0, 0)) == [DegreeSplit.zero(4)]
    assert enumerate_splits((1, 0)) == [DegreeSplit(3, ((1,), (0, 0)))]
    got = enumerate_splits((0, 2))
    assert [s.rows[1] for s in got] == [(0, 2), (1, 1)]
    assert count_splits((0, 0)) == 1
    assert count_splits((0, 2)) == 2
    assert count_splits((1, 1, 1)) == 1


def test_partition_counts():
    # p(m) for m <= 6 with no part limit
    assert [partitions_at_most(m, m) for m in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert partitions_at_most(4, 2) == 3


@settings(max_examples=60)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_count_matches_enumeration(dhat):
    splits = enumerate_splits(tuple(dhat), cap=None)
    assert count_splits(tuple(dhat)) == len(splits)
    assert len(set(splits)) == len(splits)
    for s in splits:
        assert s.row_sums() == tuple(dhat)
        for row in s.rows:
            assert list(row) == sorted(row)


def test_order_is_deterministic():
    a = [s.to_json() for s in enumerate_splits((2, 3, 1))]
    b = [s.to_json() for s in enumerate_splits((2, 3, 1))]
    assert a == b == sorted(a)


def test_increasing_compositions():
    assert list(increasing_compositions(3, 2)) == [(0, 3), (1, 2)]
    assert list(increasing_compositions(0, 3)) == [(0, 0, 0)]


def test_cap():
    with pytest.raises(SplitCapExceeded):
        enumerate_splits((0, 6, 6, 6), cap=10)


def test_splits_satisfy_combined_constraints():
    for shape, d in [
        (FlagShape(3, (1,)), (1,)),
        (FlagShape(4, (2,)), (2,)),
        (FlagShape(4, (1, 3)), (1, 2)),
        (FlagShape.complete(4), (1, 2, 1)),
    ]:
        dhat = lift_degrees(shape, d)
        for s in enumerate_splits(dhat):
            assert check_t_constraints(shape.a, d, dhat, s)


def test_constraint_evaluator_rejects_bad_split():
    shape = FlagShape(3, (1,))
    assert not check_t_constraints(shape.a, (1,), (1, 0), DegreeSplit(3, ((0,), (0, 0))))


def test_json_round_trip():
    s = DegreeSplit(4, ((1,), (0, 2), (0, 0, 1)))
    assert DegreeSplit.from_json(s.to_json()) == s
    assert s.d(4, 2) == 0


def test_split_validation():
    with pytest.raises(ValueError):
        DegreeSplit(3, ((1,), (2, 0)))
    with pytest.raises(ValueError):
        DegreeSplit(3, ((1,),))
