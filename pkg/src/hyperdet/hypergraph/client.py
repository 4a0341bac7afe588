"""
Base engine client: configuration, enumeration budget and worker fan-out.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, NoReturn, Optional, TypeVar

from pydantic import ValidationError

from ..config import EngineConfig
from ..exceptions import (
    BudgetExceededError,
    HyperdetError,
    MatrixFormatError,
    NotFullError,
)
from .models import IncidenceStructure

# Configure logging
logger = logging.getLogger("hyperdet")

T = TypeVar("T")
R = TypeVar("R")


class EngineClient:
    """Base class for the engine managers."""

    def __init__(self, config: Optional[EngineConfig] = None):
        """
        Initialize the engine client.

        Args:
            config: Engine configuration. If None, it will be created from
                environment variables.
        """
        if config is None:
            config = EngineConfig.from_env()
        self.config = config

    def _check_budget(self, operation: str, required: int) -> None:
        """
        Refuse an enumeration whose visit count exceeds the configured budget.

        Raises:
            BudgetExceededError: Reporting the required count; nothing is run.
        """
        if required > self.config.budget:
            logger.warning(f"{operation} refused: {required} visits exceed budget {self.config.budget}")
            raise BudgetExceededError(operation, required, self.config.budget)

    @staticmethod
    def _require_full(structure: IncidenceStructure, operation: str) -> int:
        """Return n for an n-full structure, raise NotFullError otherwise."""
        if not structure.is_full():
            shape = f"{structure.n_vertices}x{structure.n_edges}"
            raise NotFullError(
                f"{operation} needs an n-full structure (square, no zero entries), got {shape}",
                details={"n_vertices": structure.n_vertices, "n_edges": structure.n_edges},
            )
        return structure.size

    def _map_chunks(
        self,
        worker: Callable[[T], R],
        chunks: Sequence[T],
    ) -> list[R]:
        """
        Run ``worker`` over ``chunks`` and return results in chunk order.

        With one worker everything runs inline; otherwise chunks go to a process
        pool. Results are always ordered by chunk, so reductions do not depend
        on scheduling.
        """
        if self.config.workers <= 1 or len(chunks) <= 1:
            return [worker(chunk) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=self.config.workers) as executor:
            return list(executor.map(worker, chunks))

    def _split(self, items: Sequence[T]) -> list[Sequence[T]]:
        """Contiguous slices, a few per worker, preserving order."""
        return [items[r.start : r.stop] for r in chunked_ranges(len(items), self.config.workers * 4)]

    def _handle_error(self, e: Exception, operation: str) -> NoReturn:
        """
        Translate unexpected failures into engine exceptions.

        Raises:
            HyperdetError: Engine errors pass through unchanged.
            MatrixFormatError: For model validation failures.
            HyperdetError: For anything else.
        """
        if isinstance(e, HyperdetError):
            raise e
        if isinstance(e, ValidationError):
            raise MatrixFormatError(f"Invalid input for {operation}: {e}") from e
        logger.error(f"Error during {operation}: {str(e)}")
        raise HyperdetError(f"{operation} failed: {str(e)}") from e


def chunked_ranges(total: int, pieces: int) -> list[range]:
    """Split range(total) into ``pieces`` contiguous ranges."""
    pieces = max(1, min(total, pieces)) if total else 1
    size, extra = divmod(total, pieces)
    ranges = []
    start = 0
    for index in range(pieces):
        stop = start + size + (1 if index < extra else 0)
        ranges.append(range(start, stop))
        start = stop
    return ranges


def flatten(parts: Iterable[Iterable[Any]]) -> list[Any]:
    return [item for part in parts for item in part]
