"""Unit tests for the tasks and state modules in the fraisse package."""

import pytest

from amalgamation.strategymgr import get_strategy
from fraisse.config import RunConfig
from fraisse.runner import step
from fraisse.state import ExtensionTask, RunState, WitnessChain, empty_cube, history_composite
from fraisse.tasks import canonical_base, enumerate_tasks, transport_base
from models.cube import CubeShape

# pylint: disable=redefined-outer-name


@pytest.fixture
def initial():
    return RunState.initial(RunConfig("bkl", n=2, k=1, labels=0))


def test_empty_cube():
    cube = empty_cube(2, 3)
    assert cube.shape is CubeShape.FULL
    assert cube.size() == 0
    assert len(cube.maps) == 9
    assert empty_cube(1, 2, 4)[0].is_labeled


def test_initial_state(initial):
    assert initial.stage == 0
    assert initial.cube.k == 1
    assert initial.queue == ()
    assert initial.chain(1, 0) is None


def test_tasks_of_the_empty_cube(initial):
    tasks = enumerate_tasks(initial, get_strategy("bkl", 2))
    assert [(t.face, t.base) for t in tasks] == [(0, ()), (0, ()), (1, ()), (1, ())]
    assert tasks[0].describe() == "extend ∅ over []@0"
    assert tasks[2].to_document() == {"face": 1, "stage": 0, "base": []}
    assert tasks[0].new_id == 0


def test_canonical_base(chain):
    moved = chain.relabel({0: 4, 1: 9})
    assert canonical_base(moved, (4, 9)) == chain
    assert canonical_base(moved, (4,)).elements == (0,)


def test_steps_grow_faces_above_the_task_face(initial):
    strategy = get_strategy("bkl", 2)
    tasks = enumerate_tasks(initial, strategy)
    state = step(initial, tasks[2], strategy)
    assert state.stage == 1
    assert len(state.cube[0]) == 0
    assert len(state.cube[1]) == 1
    state = step(state, tasks[0], strategy)
    assert len(state.cube[0]) == 1
    assert len(state.cube[1]) == 2
    assert state.next_id > state.cube[1].max_id()


def test_tasks_are_carried_along_the_history(initial):
    strategy = get_strategy("bkl", 2)
    state = step(initial, enumerate_tasks(initial, strategy)[0], strategy)
    later = enumerate_tasks(state, strategy)
    task = next(t for t in later if t.face == 1 and t.base)
    state = step(state, enumerate_tasks(state, strategy)[0], strategy)
    moved = transport_base(state, task)
    assert len(moved) == len(task.base)
    assert set(moved) <= set(state.cube[1].elements)


def test_history_composite_bounds(initial):
    with pytest.raises(ValueError):
        history_composite(initial, 0, 1)
    assert history_composite(initial, 0, 0) == {}


def test_witness_chain_document():
    chain = WitnessChain(1, 2, 3, (4, 5), (6, 7))
    assert chain.x == 5 and chain.y == 7
    assert chain.last_stage == 4
    assert chain.to_document() == {"sigma": 1, "tau": 2, "birth": 3, "x": [4, 5], "y": [6, 7]}


def test_extension_task_is_hashable(initial):
    task = enumerate_tasks(initial, get_strategy("bkl", 2))[0]
    assert isinstance(task, ExtensionTask)
    assert len({task, task}) == 1
