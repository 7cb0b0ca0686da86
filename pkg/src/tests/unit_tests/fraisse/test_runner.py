"""Unit tests for the runner module in the fraisse package."""

from itertools import count

import pytest

from fraisse.certificate import certify_irreducible
from fraisse.config import RunConfig
from fraisse.errors import RunAbortedError
from fraisse.runner import run
from cubes.validators import validate_disjoint, validate_disjoint_embedding
from helpers.serialization import serialize_cube
from structures.validation import validate_structure


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
def test_runs_end_irreducible(n, k):
    """Three drained rounds of BKL_n runs end in a disjoint irreducible k-cube."""
    state = run(RunConfig("bkl", n=n, k=k, rounds=3, cap=1, seed=11))
    assert state.queue == ()
    assert state.rounds_completed == 3
    assert certify_irreducible(state).passed
    assert validate_disjoint(state.cube).ok
    for sigma in state.cube.faces():
        assert validate_structure(state.cube[sigma]).ok


def test_history_is_a_chain_of_disjoint_embeddings():
    state = run(RunConfig("bkl", n=2, k=1, rounds=2, keep_stages=True))
    assert len(state.history) == state.stage
    assert len(state.stages) == state.stage + 1
    assert state.stages[-1] == state.cube
    for i in range(state.stage):
        e = state.stage_embedding(i)
        assert e.source == state.stages[i]
        assert e.target == state.stages[i + 1]
        assert validate_disjoint_embedding(e).ok


def test_stage_cubes_are_dropped_unless_kept():
    state = run(RunConfig("bkl", n=2, k=1, rounds=2))
    assert state.stages == ()
    assert len(state.history) == state.stage
    assert state.stage_cube(state.stage) == state.cube
    with pytest.raises(ValueError, match="keep_stages"):
        state.stage_embedding(0)


def test_runs_are_deterministic():
    config = RunConfig("bkl", n=3, k=1, rounds=2, seed=5, tasks_per_round=8)
    assert serialize_cube(run(config).cube) == serialize_cube(run(config).cube)


def test_fewer_rounds_give_a_prefix():
    short = run(RunConfig("bkl", n=2, k=1, rounds=1, seed=3, keep_stages=True))
    long = run(RunConfig("bkl", n=2, k=1, rounds=2, seed=3, keep_stages=True))
    assert long.stages[: len(short.stages)] == short.stages
    assert long.history[: short.stage] == short.history


def test_default_rounds_drain_the_queue():
    state = run(RunConfig("bkl", n=2, k=1, rounds=2))
    assert state.queue == ()
    assert state.stage == 32


def test_tasks_per_round_leaves_the_rest_queued():
    state = run(RunConfig("bkl", n=2, k=1, rounds=1, tasks_per_round=3))
    assert state.stage == 3
    assert len(state.queue) == 1


def test_zero_rounds_leave_the_empty_cube():
    state = run(RunConfig("sets", k=3, rounds=0))
    assert state.stage == 0
    assert not certify_irreducible(state).passed


def test_labels_stay_distinct():
    state = run(RunConfig("bkl", n=2, k=1, rounds=2, labels=8))
    top = state.cube[state.cube.top]
    assert top.is_labeled
    assert len({top.label_of(a) for a in top.elements}) == len(top)


@pytest.mark.parametrize("family,k", [("sets", 3), ("graphs", 2)])
def test_other_families(family, k):
    state = run(RunConfig(family, k=k, rounds=2, labels=0))
    assert certify_irreducible(state).passed
    assert validate_disjoint(state.cube).ok


def test_element_cap_aborts_with_partial_state():
    with pytest.raises(RunAbortedError) as e:
        run(RunConfig("bkl", n=2, k=1, rounds=3, element_cap=3))
    assert e.value.state.cube.size() > 3
    assert e.value.state.stage >= 1


def test_wall_time_cap_aborts():
    ticks = count(0, 1000)
    with pytest.raises(RunAbortedError, match="wall-time cap"):
        run(RunConfig("bkl", n=2, k=1, rounds=1), clock=lambda: next(ticks))
