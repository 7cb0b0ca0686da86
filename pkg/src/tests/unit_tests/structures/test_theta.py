"""Unit tests for the theta module in the structures package."""

from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st
import numpy as np

from amalgamation.strategymgr import get_strategy
from models.structure import AssignmentError, FiniteStructure, StructureMismatchError
from sampledata.generators import random_labeled_pair, random_pair
from structures.embeddings import is_embedding
from structures.theta import satisfies_theta, theta

# pylint: disable=redefined-outer-name


def test_render(chain):
    assert theta(chain).render() == (
        "x0 != x1 & R_0(x0) & s_0(x0) = x0 & R_1(x1) & s_0(x1) = x1 & s_1(x1) = x0"
    )


def test_empty_structure_gives_truth():
    formula = theta(FiniteStructure.empty(2))
    assert formula.is_truth()
    assert formula.render() == "true"
    assert satisfies_theta(FiniteStructure.empty(2), formula, [])


def test_document(chain):
    doc = theta(chain).to_document()
    assert doc["variables"] == [0, 1]
    assert doc["atoms"][0] == {"kind": "neq", "vars": [0, 1]}
    assert doc["atoms"][1] == {"kind": "rel", "index": 0, "vars": [0]}
    assert doc["text"] == theta(chain).render()


def test_satisfies_theta_on_identity_and_swap(chain):
    formula = theta(chain)
    assert satisfies_theta(chain, formula, [0, 1])
    assert satisfies_theta(chain, formula, {0: 0, 1: 1})
    assert not satisfies_theta(chain, formula, [1, 0])


def test_labeled_theta(labeled_chain, chain):
    formula = theta(labeled_chain)
    assert "P_0(x0)" in formula.render()
    assert "!P_1(x0)" in formula.render()
    assert satisfies_theta(labeled_chain, formula, [0, 1])
    with pytest.raises(StructureMismatchError):
        satisfies_theta(chain, formula, [0, 1])


def test_bad_assignment(chain):
    with pytest.raises(AssignmentError):
        satisfies_theta(chain, theta(chain), [0])
    with pytest.raises(AssignmentError):
        satisfies_theta(chain, theta(chain), [0, 9])


def _agree(a, b):
    formula = theta(a)
    for images in permutations(b.elements, len(a)):
        mapping = dict(zip(a.elements, images))
        if satisfies_theta(b, formula, list(images)) != is_embedding(a, b, mapping):
            return False
    return True


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([1, 2]))
def test_theta_characterizes_embeddings(seed, n):
    """theta_A holds of an injective tuple exactly when the map is an embedding."""
    a, b = random_pair(get_strategy("bkl", n), np.random.default_rng(seed), size_a=3, size_b=4)
    assert _agree(a, b)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_theta_characterizes_labeled_embeddings(seed):
    a, b = random_labeled_pair(get_strategy("bkl", 2), np.random.default_rng(seed))
    assert _agree(a, b)
