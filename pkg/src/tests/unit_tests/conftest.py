"""Shared fixtures for the unit tests."""

from itertools import product

import numpy as np
import pytest

from models.structure import FiniteStructure, LabeledStructure, TupleEntry


def build(arity, elements, rows=None):
    """Structure whose unlisted tuples get relation 0 and s_0 = first coordinate."""
    rows = rows or {}
    table = {}
    for t in product(elements, repeat=arity):
        r, values = rows.get(t, (0, (t[0],)))
        table[t] = TupleEntry(r, tuple(values))
    return FiniteStructure(arity, elements, table)


@pytest.fixture
def make_structure():
    """Factory for small structures given by their non-default rows."""
    return build


@pytest.fixture
def chain():
    """BKL_1 structure on {0, 1} with s_1(1) = 0, so 0 lies in the closure of 1."""
    return build(1, (0, 1), {(1,): (1, (1, 0))})


@pytest.fixture
def free_pair():
    """Two elements each closed on their own: not a BKL_1 structure."""
    return build(1, (0, 1))


@pytest.fixture
def labeled_chain(chain):
    return LabeledStructure(chain, {0: {0}, 1: {1}}, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
