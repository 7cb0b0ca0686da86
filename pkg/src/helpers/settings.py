"""
Process-level settings read from the environment.

``CUBE_AMALGAM_THREADS`` bounds the worker threads used to test digraph
arcs. Anything other than a positive integer falls back to a single thread.
"""

import logging
import os

logger = logging.getLogger(__name__)

THREADS_ENV = "CUBE_AMALGAM_THREADS"
DEFAULT_THREADS = 1


def thread_count() -> int:
    """Number of worker threads allowed by the environment."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return DEFAULT_THREADS
    try:
        value = int(raw)
    except ValueError:
        logger.warning("%s=%r is not an integer; using %d thread", THREADS_ENV, raw, DEFAULT_THREADS)
        return DEFAULT_THREADS
    if value < 1:
        logger.warning("%s=%d is not positive; using %d thread", THREADS_ENV, value, DEFAULT_THREADS)
        return DEFAULT_THREADS
    return value
