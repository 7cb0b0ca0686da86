"""Unit tests for the extension module in the amalgamation package."""

import numpy as np
import pytest

from amalgamation.allocators import IdAllocator
from amalgamation.errors import AmalgamationPreconditionError, AmalgamationRefused
from amalgamation.extension import extend_cube
from amalgamation.strategymgr import get_strategy
from cubes.validators import validate_disjoint, validate_disjoint_embedding
from models.cube import CubeShapeError, is_subface
from models.structure import Embedding
from sampledata.generators import grow, random_partial_cube

# pylint: disable=redefined-outer-name


def full_cube(strategy, k, rng):
    return strategy.amalgamate(random_partial_cube(strategy, k, rng))


def extension_at(c, rho, strategy, rng, extra=2):
    ids = IdAllocator.above(c.structures.values())
    base = c[rho]
    target = grow(strategy, base, extra, rng, ids, 1)
    return Embedding(base, target, {a: a for a in base.elements})


@pytest.mark.parametrize("k", [1, 2])
def test_extension_is_a_disjoint_embedding(k):
    """Extending at any face gives a disjoint cube and a disjoint embedding restricting to h."""
    strategy = get_strategy("bkl", 3)
    rng = np.random.default_rng(40 + k)
    for _ in range(50):
        c = full_cube(strategy, k, rng)
        rho = int(rng.integers(1 << k))
        h = extension_at(c, rho, strategy, rng)
        extended, e = extend_cube(c, rho, h, strategy, check=True)

        assert validate_disjoint(extended).ok
        assert validate_disjoint_embedding(e).ok
        assert e[rho] == h
        for tau in c.faces():
            assert strategy.validate(extended[tau]).ok
            if not is_subface(rho, tau):
                assert extended[tau] == c[tau]
                assert e[tau].is_identity()


def test_extension_along_identity_keeps_sizes():
    strategy = get_strategy("bkl", 2)
    c = full_cube(strategy, 1, np.random.default_rng(2))
    extended, _ = extend_cube(c, 0, Embedding.identity(c[0]), strategy)
    assert [len(extended[tau]) for tau in c.faces()] == [len(c[tau]) for tau in c.faces()]


def test_extension_needs_one_more_dimension():
    strategy = get_strategy("bkl", 2)
    rng = np.random.default_rng(6)
    c = full_cube(strategy, 2, rng)
    with pytest.raises(AmalgamationRefused, match="cube extension needs k=3"):
        extend_cube(c, 0, Embedding.identity(c[0]), strategy)


def test_extension_checks_its_arguments(chain):
    strategy = get_strategy("bkl", 2)
    c = full_cube(strategy, 1, np.random.default_rng(9))
    with pytest.raises(CubeShapeError):
        extend_cube(c.restrict_to_boundary(), 0, Embedding.identity(c[0]), strategy)
    with pytest.raises(CubeShapeError):
        extend_cube(c, 4, Embedding.identity(c[0]), strategy)
    with pytest.raises(AmalgamationPreconditionError):
        extend_cube(c, 0, Embedding.identity(chain), strategy)
