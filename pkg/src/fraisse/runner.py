"""
The iterative construction of an irreducible k-cube.

Each step takes one extension task (rho, B, B'), glues B' onto A_rho over B
by disjoint 2-amalgamation and propagates the new A_rho through the cube
with ``extend_cube``. Witness chains opened at steps on a singleton face
{i} follow one element of that face through every later stage; each keeps
its image in the top face outside the image of a face tau not containing i.
"""

import logging
import time
from dataclasses import replace
from typing import Callable, List, Optional

from tqdm import tqdm

from amalgamation.allocators import IdAllocator, LabelAllocator
from amalgamation.errors import AmalgamationError
from amalgamation.extension import extend_cube
from amalgamation.strategy import AmalgamationStrategy
from amalgamation.strategymgr import get_strategy
from fraisse.config import RunConfig
from fraisse.errors import InternalConsistencyError, RunAbortedError
from fraisse.state import ExtensionTask, RunState, WitnessChain
from fraisse.tasks import enumerate_tasks, transport_base
from models.cube import CubeDiagram, CubeShape, face_label, face_members
from models.structure import Embedding, LabeledStructure

logger = logging.getLogger(__name__)

LEFT, RIGHT, BOTH = 1, 2, 3


def _amalgamate_task(
    state: RunState,
    task: ExtensionTask,
    strategy: AmalgamationStrategy,
    ids: IdAllocator,
    labels: Optional[LabelAllocator],
):
    """Glue the task's extension onto its face; returns (2-cube, new element id)."""
    a_rho = state.cube[task.face]
    real = transport_base(state, task)
    new_id = ids.fresh()
    id_map = dict(enumerate(real))
    id_map[task.new_id] = new_id
    extension = task.extension.relabel(id_map)
    if labels is not None:
        assigned = {a: a_rho.label_of(a) for a in real}
        assigned[new_id] = labels.allocate()
        extension = LabeledStructure(extension, assigned, labels.universe)
    base = a_rho.restrict(real)
    inclusion = {a: a for a in real}
    p = CubeDiagram(
        2,
        CubeShape.BOUNDARY,
        {0: base, LEFT: a_rho, RIGHT: extension},
        {
            (0, 0): Embedding.identity(base),
            (LEFT, LEFT): Embedding.identity(a_rho),
            (RIGHT, RIGHT): Embedding.identity(extension),
            (0, LEFT): Embedding(base, a_rho, inclusion),
            (0, RIGHT): Embedding(base, extension, inclusion),
        },
    )
    return strategy.amalgamate(p, ids, check=False), new_id


def _open_chains(state: RunState, rho: int, x: int) -> List[WitnessChain]:
    cube = state.cube
    if len(face_members(rho)) != 1:
        return []
    y = cube.map(rho, cube.top)(x)
    opened = []
    for tau in cube.faces():
        if tau & rho or state.chain(rho, tau) is not None:
            continue
        if y in cube.image(tau):
            raise InternalConsistencyError(
                f"new element {y} of face {face_label(rho)} lies in the image of {face_label(tau)}"
            )
        opened.append(WitnessChain(rho, tau, state.stage, (x,), (y,)))
        logger.debug("stage %d: opened chain (%s, %s) at y=%d", state.stage, face_label(rho), face_label(tau), y)
    return opened


def step(state: RunState, task: ExtensionTask, strategy: AmalgamationStrategy) -> RunState:
    """
    Execute one extension task.

    Args:
        state (RunState): Stage i.
        task (ExtensionTask): The task, possibly created at an earlier stage.
        strategy (AmalgamationStrategy): The run's family.

    Returns:
        RunState: Stage i+1; faces not containing the task's face are unchanged.

    Raises:
        InternalConsistencyError: If an amalgamation fails or a witness chain breaks.
        RunAbortedError: If the cube outgrows the element cap.
    """
    config = state.config
    ids = IdAllocator(state.next_id)
    labels = LabelAllocator(config.labels, state.used_labels) if config.labels > 0 else None
    try:
        glued, new_id = _amalgamate_task(state, task, strategy, ids, labels)
        h = glued.map(LEFT, BOTH)
        x = glued.map(RIGHT, BOTH)(new_id)
        cube, e = extend_cube(state.cube, task.face, h, strategy, ids)
    except AmalgamationError as err:
        raise InternalConsistencyError(f"{task.describe()} failed at stage {state.stage}: {err}") from err

    chains = []
    for chain in state.chains:
        advanced = chain.advance(e)
        if not advanced.holds_at(cube):
            raise InternalConsistencyError(
                f"witness chain ({face_label(chain.sigma)}, {face_label(chain.tau)}) broke at stage {state.stage + 1}"
            )
        chains.append(advanced)

    used = labels.used if labels is not None else state.used_labels
    next_state = replace(state.advance(cube, e), chains=tuple(chains), next_id=ids.next_id, used_labels=used)
    next_state = replace(next_state, chains=next_state.chains + tuple(_open_chains(next_state, task.face, x)))
    logger.debug("stage %d: %s, cube size %d", next_state.stage, task.describe(), cube.size())
    if cube.size() > config.element_cap:
        raise RunAbortedError(f"cube holds {cube.size()} elements, above the cap of {config.element_cap}", next_state)
    return next_state


def start_round(state: RunState, strategy: AmalgamationStrategy) -> RunState:
    """Enqueue the tasks of the current stage behind the pending ones."""
    return replace(state, queue=state.queue + tuple(enumerate_tasks(state, strategy)))


def run_round(
    state: RunState,
    strategy: AmalgamationStrategy,
    deadline: Optional[float] = None,
    progress: bool = False,
    clock: Callable[[], float] = time.monotonic,
) -> RunState:
    """Run one round: enqueue, then execute up to ``tasks_per_round`` tasks FIFO."""
    state = start_round(state, strategy)
    limit = state.config.tasks_per_round
    count = len(state.queue) if limit is None else min(limit, len(state.queue))
    round_no = state.rounds_completed + 1
    for _ in tqdm(range(count), desc=f"Round {round_no}", disable=not progress):
        task, rest = state.queue[0], state.queue[1:]
        state = step(replace(state, queue=rest), task, strategy)
        if deadline is not None and clock() > deadline:
            raise RunAbortedError(f"wall-time cap of {state.config.time_cap_seconds}s reached", state)
    logger.info("round %d done at stage %d, %d tasks queued", round_no, state.stage, len(state.queue))
    return replace(state, rounds_completed=round_no)


def run(
    config: RunConfig,
    strategy: Optional[AmalgamationStrategy] = None,
    progress: bool = False,
    clock: Callable[[], float] = time.monotonic,
) -> RunState:
    """
    Run the construction for ``config.rounds`` rounds.

    Args:
        config (RunConfig): The run's configuration.
        strategy (AmalgamationStrategy, optional): Defaults to the config's family.
        progress (bool): Show progress bars.
        clock (Callable[[], float]): Time source for the wall-time cap.

    Returns:
        RunState: The final state; a run with fewer rounds yields a prefix of its history.

    Raises:
        RunAbortedError: When a cap is hit; carries the partial state.
    """
    strategy = strategy or get_strategy(config.family, config.n)
    state = RunState.initial(config)
    deadline = clock() + config.time_cap_seconds
    logger.info("starting %s run: k=%d, %d rounds, cap %d", strategy.name, config.k, config.rounds, config.cap)
    for _ in range(config.rounds):
        state = run_round(state, strategy, deadline, progress, clock)
    return state
