"""Exceptions raised by the Fraïssé runner."""


class InternalConsistencyError(RuntimeError):
    """Raised when an invariant the construction guarantees fails during a run."""


class RunAbortedError(RuntimeError):
    """Raised when a run hits its element or wall-time cap.

    Args:
        message (str): Which cap was hit.
        state (RunState): The state reached so far, for persistence.
    """

    def __init__(self, message: str, state) -> None:
        super().__init__(message)
        self.state = state
