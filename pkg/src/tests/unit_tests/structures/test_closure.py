"""Unit tests for the closure module in the structures package."""

import pytest
from hypothesis import given, settings, strategies as st
import numpy as np

from amalgamation.strategymgr import get_strategy
from models.structure import AssignmentError
from sampledata.generators import random_member
from structures.closure import (
    IndependenceChecker,
    closed_subsets,
    generated_substructure,
    independence_check,
    induced_substructure,
    is_closed,
)

# pylint: disable=redefined-outer-name


def test_generated_substructure_follows_functions(chain):
    assert generated_substructure(chain, [1]) == (0, 1)
    assert generated_substructure(chain, [0]) == (0,)
    assert generated_substructure(chain, []) == ()


def test_generated_substructure_rejects_foreign_seed(chain):
    with pytest.raises(AssignmentError):
        generated_substructure(chain, [7])


def test_is_closed(chain):
    assert is_closed(chain, [0])
    assert not is_closed(chain, [1])
    assert is_closed(chain, [])


def test_closed_subsets_in_size_then_lex_order(chain, free_pair):
    assert list(closed_subsets(chain, 2)) == [(), (0,), (0, 1)]
    assert list(closed_subsets(free_pair, 1)) == [(), (0,), (1,)]


def test_induced_substructure(chain):
    assert induced_substructure(chain, [0]).elements == (0,)


def test_independence(chain, free_pair):
    assert independence_check(free_pair, [0, 1])
    assert not independence_check(chain, [0, 1])
    assert independence_check(chain, [])
    assert IndependenceChecker(free_pair).find_independent_set(2) == (0, 1)
    assert IndependenceChecker(chain).find_independent_set(2) is None


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([1, 2]))
def test_closure_is_monotone_and_idempotent(seed, n):
    """Closure contains its seeds, is idempotent and grows with the seed set."""
    rng = np.random.default_rng(seed)
    s = random_member(get_strategy("bkl", n), 4, rng)
    if not len(s):
        return
    seeds = [a for a in s.elements if rng.random() < 0.5]
    closure = generated_substructure(s, seeds)
    assert set(seeds) <= set(closure)
    assert generated_substructure(s, closure) == closure
    assert is_closed(s, closure)
    bigger = generated_substructure(s, list(seeds) + [s.elements[0]])
    assert set(closure) <= set(bigger)
