"""Unit tests for the allocators module in the amalgamation package."""

import pytest

from amalgamation.allocators import IdAllocator, LabelAllocator, label_sets
from amalgamation.errors import LabelUniverseExhausted


def test_id_allocator_is_monotone(chain):
    ids = IdAllocator.above([chain])
    assert ids.next_id == 2
    assert [ids.fresh(), ids.fresh()] == [2, 3]
    ids.reserve_above(10)
    assert ids.fresh() == 11
    ids.reserve_above(4)
    assert ids.next_id == 12


def test_id_allocator_copy_is_independent():
    ids = IdAllocator(5)
    other = ids.copy()
    other.fresh()
    assert ids.next_id == 5
    assert other.next_id == 6


def test_label_sets_order():
    assert list(label_sets(2)) == [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
    assert len(list(label_sets(4))) == 16


def test_label_allocator_takes_least_unused():
    labels = LabelAllocator(2, used=[set()])
    assert labels.allocate() == frozenset({0})
    assert labels.allocate(required={1}) == frozenset({1})
    assert labels.allocate() == frozenset({0, 1})
    assert labels.is_used({0, 1})
    assert len(labels.used) == 4


def test_label_allocator_honours_forbidden():
    labels = LabelAllocator(3)
    assert labels.allocate(forbidden={0}) == frozenset()
    assert labels.allocate(forbidden={0}) == frozenset({1})


def test_label_allocator_exhaustion():
    labels = LabelAllocator(1)
    labels.allocate()
    labels.allocate()
    with pytest.raises(LabelUniverseExhausted) as e:
        labels.allocate()
    assert e.value.required == 2


def test_label_allocator_copy_is_independent():
    labels = LabelAllocator(2)
    other = labels.copy()
    other.allocate()
    assert not labels.used
    other.mark_used({1})
    assert other.is_used({1}) and not labels.is_used({1})
