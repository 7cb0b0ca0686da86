"""
Extension-axiom coverage of a stage cube.

For every face sigma and every instance A ⊆ B of the extension universe, the
report counts the embeddings of A into A_sigma and how many of them extend
to embeddings of B. Labels are ignored: the instances are unlabelled types.
"""

import logging
from enum import Enum
from typing import Optional

import pandas as pd

from amalgamation.strategy import AmalgamationStrategy, ExtensionUniverse, extension_universe, realizations
from amalgamation.strategymgr import get_strategy
from fraisse.state import RunState
from models.cube import CubeDiagram, face_label
from models.types import Document

logger = logging.getLogger(__name__)

COLUMNS = ["face", "face_label", "instance", "base_size", "extension_size", "realizations", "extended", "status"]


class CoverageStatus(str, Enum):
    REALIZED = "REALIZED"
    PENDING = "PENDING"


class CoverageReport:
    """
    One row per (face, instance).

    Args:
        frame (pd.DataFrame): Rows with the columns in ``COLUMNS``.
        stage (int): Stage the report describes.
    """

    def __init__(self, frame: pd.DataFrame, stage: int) -> None:
        self.frame = frame
        self.stage = stage

    def __len__(self) -> int:
        return len(self.frame)

    def status(self, face: int, instance: str) -> CoverageStatus:
        row = self.frame[(self.frame["face"] == face) & (self.frame["instance"] == instance)]
        if row.empty:
            raise KeyError(f"no row for face {face_label(face)} and instance {instance}")
        return CoverageStatus(row["status"].iloc[0])

    def realized(self) -> pd.DataFrame:
        return self.frame[self.frame["status"] == CoverageStatus.REALIZED.value]

    def summary(self) -> pd.DataFrame:
        """Realized and total instance counts per face."""
        grouped = self.frame.assign(
            realized=self.frame["status"] == CoverageStatus.REALIZED.value
        ).groupby(["face", "face_label"], sort=True)
        return grouped.agg(realized=("realized", "sum"), total=("instance", "count")).reset_index()

    def realized_fraction(self) -> float:
        if self.frame.empty:
            return 0.0
        return len(self.realized()) / len(self.frame)

    def to_document(self) -> Document:
        rows = [
            {column: _plain(row[column]) for column in COLUMNS}
            for _, row in self.frame.iterrows()
        ]
        return {
            "stage": self.stage,
            "realized": int(len(self.realized())),
            "total": int(len(self.frame)),
            "rows": rows,
        }


def _plain(value):
    return value.item() if hasattr(value, "item") else value


def cube_coverage(cube: CubeDiagram, universe: ExtensionUniverse, stage: int = 0) -> CoverageReport:
    """Coverage of a single cube against a precomputed extension universe."""
    records = []
    for sigma in cube.faces():
        face = cube[sigma]
        for instance in universe.instances:
            found, extended = realizations(instance, face)
            realized = found > 0 and extended == found
            records.append(
                {
                    "face": sigma,
                    "face_label": face_label(sigma),
                    "instance": instance.name,
                    "base_size": len(instance.base),
                    "extension_size": len(instance.extension),
                    "realizations": found,
                    "extended": extended,
                    "status": (CoverageStatus.REALIZED if realized else CoverageStatus.PENDING).value,
                }
            )
    return CoverageReport(pd.DataFrame.from_records(records, columns=COLUMNS), stage)


def coverage_report(
    state: RunState,
    strategy: Optional[AmalgamationStrategy] = None,
    universe: Optional[ExtensionUniverse] = None,
) -> CoverageReport:
    """
    Score the current stage of a run against the extension axioms up to size S.

    Args:
        state (RunState): The run.
        strategy (AmalgamationStrategy, optional): Defaults to the config's family.
        universe (ExtensionUniverse, optional): Instance set; defaults to the
            universe of the config's cap and extension parameters.

    Returns:
        CoverageReport: REALIZED rows have every realization extended.
    """
    config = state.config
    if universe is None:
        strategy = strategy or get_strategy(config.family, config.n)
        universe = extension_universe(
            strategy, config.cap, config.rel_cap, config.type_cap, config.seed, config.exhaustive_limit
        )
    report = cube_coverage(state.cube, universe, state.stage)
    logger.info("stage %d coverage: %d of %d instances realized", state.stage, len(report.realized()), len(report))
    return report
