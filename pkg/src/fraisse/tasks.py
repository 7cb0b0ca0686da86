"""
Extension tasks of a Fraïssé run.

A task asks to extend a closed subset B of some face by one new element.
Tasks are enumerated against the stage that creates them and carried
forward along the history when they are executed, since the image of a
closed set under an embedding is closed.
"""

import logging
from typing import List, Optional, Tuple

from amalgamation.strategy import AmalgamationStrategy
from fraisse.state import ExtensionTask, RunState, history_composite
from models.structure import FiniteStructure, Structure
from models.types import ElementId
from structures.closure import closed_subsets

logger = logging.getLogger(__name__)


def canonical_base(s: Structure, base: Tuple[ElementId, ...]) -> FiniteStructure:
    """The unlabelled substructure on ``base``, renamed to ids 0..|base|-1 in order."""
    restricted = s.base.restrict(base)
    return restricted.relabel({a: i for i, a in enumerate(base)})


def enumerate_tasks(state: RunState, strategy: AmalgamationStrategy, cap: Optional[int] = None) -> List[ExtensionTask]:
    """
    List the extension tasks of the current stage.

    Args:
        state (RunState): The run.
        strategy (AmalgamationStrategy): The run's family.
        cap (int, optional): Size cap S of the extended structure; defaults to the config's.

    Returns:
        list[ExtensionTask]: In face order, then by base (size, then
            lexicographic), then by the canonical order of the extension.
    """
    config = state.config
    cap = config.cap if cap is None else cap
    tasks = []
    cube = state.cube
    for rho in cube.faces():
        face = cube[rho]
        for base in closed_subsets(face, cap - 1):
            extensions = strategy.one_point_extensions(
                canonical_base(face, base),
                len(base),
                config.rel_cap,
                config.type_cap,
                config.seed,
                config.exhaustive_limit,
            )
            tasks.extend(ExtensionTask(rho, state.stage, base, ext) for ext in extensions)
    logger.info("stage %d: %d extension tasks", state.stage, len(tasks))
    return tasks


def transport_base(state: RunState, task: ExtensionTask) -> Tuple[ElementId, ...]:
    """Current ids of the task's base, in the order of the canonical ids."""
    composite = history_composite(state, task.face, task.stage)
    return tuple(composite[a] for a in task.base)
