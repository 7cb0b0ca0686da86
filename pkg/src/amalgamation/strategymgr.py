"""
This module is responsible for managing the amalgamation strategies. It
imports every module from the `strategies` sub-package and indexes them by the
family name they export, so the CLI and the runner can ask for a strategy by
name.
"""

import importlib
import logging
import os
from functools import lru_cache
from typing import Dict, List

from amalgamation.strategy import AmalgamationStrategy

logger = logging.getLogger(__name__)


class UnknownFamilyError(ValueError):
    """Raised when no strategy module exports the requested family."""


class StrategyManager:
    """
    Class for managing the strategy plug-ins.

    Returns:
        StrategyManager: An instance of the StrategyManager class.
    """

    def __init__(self) -> None:
        self._modules: Dict[str, object] = {}

        # Get the path to the `strategies` sub-package
        strategies_dir = os.path.join(os.path.dirname(__file__), "strategies")

        # Iterate through files in the `strategies` sub-package
        for filename in sorted(os.listdir(strategies_dir)):
            # Check for .py files, excluding __init__.py
            if filename.endswith(".py") and filename != "__init__.py":
                module_name = filename[:-3]  # Strip the .py extension

                try:
                    module = importlib.import_module(f"amalgamation.strategies.{module_name}")
                except ImportError as e:
                    logger.error("Failed to import strategy module %s: %s", module_name, e)
                    continue
                family = getattr(module, "FAMILY", None)
                if family is None or not hasattr(module, "create_strategy"):
                    logger.warning("Strategy module %s exports no FAMILY/create_strategy", module_name)
                    continue
                self._modules[family] = module

    @property
    def families(self) -> List[str]:
        return sorted(self._modules)

    def create(self, family: str, n: int = 1) -> AmalgamationStrategy:
        """
        Instantiate the strategy of a family.

        Args:
            family (str): One of ``families``.
            n (int): Arity for families that take one (BKL_n).

        Raises:
            UnknownFamilyError: If no module exports ``family``.
        """
        try:
            module = self._modules[family]
        except KeyError as e:
            raise UnknownFamilyError(
                f"unknown family {family!r}; expected one of {', '.join(self.families)}"
            ) from e
        return module.create_strategy(n)


@lru_cache(maxsize=1)
def _manager() -> StrategyManager:
    return StrategyManager()


def get_strategy(family: str, n: int = 1) -> AmalgamationStrategy:
    """Look up a strategy by family name, e.g. ``get_strategy("bkl", 2)``."""
    return _manager().create(family, n)


def families() -> List[str]:
    return _manager().families
