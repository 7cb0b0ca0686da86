"""Configuration of a Fraïssé run."""

from dataclasses import asdict, dataclass
from typing import Optional

from amalgamation.errors import AmalgamationRefused
from models.cube import MAX_K
from models.types import Document

DEFAULT_LABELS = 16
DEFAULT_CAP = 2
DEFAULT_REL_CAP = 1
DEFAULT_TYPE_CAP = 4
DEFAULT_EXHAUSTIVE_LIMIT = 4096
DEFAULT_ELEMENT_CAP = 400
DEFAULT_TIME_CAP_SECONDS = 600

FAMILIES = ("bkl", "sets", "graphs")


class RunConfigError(ValueError):
    """Raised when a run configuration is out of range."""


@dataclass(frozen=True)
class RunConfig:
    """
    Everything that determines a run. Two runs with equal configs produce
    identical states.

    Args:
        family (str): ``bkl``, ``sets`` or ``graphs``.
        n (int): Arity for BKL_n; ignored by the other families.
        k (int): Cube dimension.
        rounds (int): Number of rounds R.
        cap (int): Per-round size cap S of extension targets.
        labels (int): Label universe L; 0 runs unlabelled.
        seed (int): Seed of every sampled choice.
        rel_cap (int): Largest relation index of new tuples in extension types.
        type_cap (int): Extension types per base.
        exhaustive_limit (int): Candidate count below which types are enumerated.
        tasks_per_round (int | None): None (the default) drains the queue every
            round; a positive value runs at most that many tasks per round and
            leaves the rest queued.
        element_cap (int): Abort when the cube holds more elements.
        time_cap_seconds (int): Abort after this many seconds of wall time.
        keep_stages (bool): Persist every stage cube.

    Raises:
        AmalgamationRefused: If k >= n for BKL_n.
        RunConfigError: On any other out-of-range value.
    """

    family: str
    n: int = 2
    k: int = 1
    rounds: int = 1
    cap: int = DEFAULT_CAP
    labels: int = DEFAULT_LABELS
    seed: int = 0
    rel_cap: int = DEFAULT_REL_CAP
    type_cap: int = DEFAULT_TYPE_CAP
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
    tasks_per_round: Optional[int] = None
    element_cap: int = DEFAULT_ELEMENT_CAP
    time_cap_seconds: int = DEFAULT_TIME_CAP_SECONDS
    keep_stages: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise RunConfigError(f"family must be one of {', '.join(FAMILIES)}, got {self.family!r}")
        if not 1 <= self.k <= MAX_K:
            raise RunConfigError(f"k must lie in 1..{MAX_K}, got {self.k}")
        if self.family == "bkl":
            if self.n < 1:
                raise RunConfigError(f"n must be positive, got {self.n}")
            if self.k >= self.n:
                raise AmalgamationRefused(
                    f"amalgamation arity exceeded: a run on BKL_{self.n} needs 1 <= k < n, got k={self.k}"
                )
        if self.rounds < 0:
            raise RunConfigError(f"rounds must be non-negative, got {self.rounds}")
        if self.cap < 1:
            raise RunConfigError(f"cap must be at least 1, got {self.cap}")
        if self.labels < 0:
            raise RunConfigError(f"labels must be non-negative, got {self.labels}")
        if self.rel_cap < 0 or self.type_cap < 1 or self.exhaustive_limit < 1:
            raise RunConfigError("rel_cap must be >= 0, type_cap and exhaustive_limit >= 1")
        if self.tasks_per_round is not None and self.tasks_per_round < 1:
            raise RunConfigError(f"tasks_per_round must be positive or None, got {self.tasks_per_round}")
        if self.element_cap < 1:
            raise RunConfigError(f"element_cap must be positive, got {self.element_cap}")
        if isinstance(self.time_cap_seconds, bool) or not isinstance(self.time_cap_seconds, int):
            raise RunConfigError(
                f"time_cap_seconds must be a whole number of seconds, got {self.time_cap_seconds!r}"
            )
        if self.time_cap_seconds < 1:
            raise RunConfigError(f"time_cap_seconds must be positive, got {self.time_cap_seconds}")

    @property
    def arity(self) -> int:
        return {"bkl": self.n, "sets": 1, "graphs": 2}[self.family]

    def to_document(self) -> Document:
        return asdict(self)
