"""
Parallel Execution Helpers
==========================

Thread-pool helpers for the embarrassingly parallel parts of the pipeline:
per-point transfer-function evaluation, per-frequency H-infinity sweeps
and the independent P-side / Q-side factor computations.

NumPy and SciPy release the GIL inside LAPACK, so threads give real
speed-up for the dense solves performed here.

Classes
-------
TaskRunner
    Ordered parallel map with progress callbacks.

Functions
---------
resolve_workers
    Effective worker count, honoring ``MOR_NUM_THREADS``.
parallel_map
    Convenience wrapper around :class:`TaskRunner`.

Example
-------
>>> from src.core.parallel import parallel_map
>>> values = parallel_map(lambda s: ss.transfer(s), points)
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence, Tuple, TypeVar

from src.core.config import ENV_THREADS

# Module logger
logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_WORKERS = 4


def resolve_workers(max_workers: Optional[int] = None) -> int:
    """
    Effective number of worker threads.

    ``MOR_NUM_THREADS`` caps the requested count; without a request the
    environment value (or :data:`DEFAULT_WORKERS`) is used.
    """
    env_value = os.environ.get(ENV_THREADS)
    cap: Optional[int] = None
    if env_value:
        try:
            cap = max(1, int(env_value))
        except ValueError:
            logger.warning(f"Ignoring non-integer {ENV_THREADS}={env_value!r}")
    requested = max_workers if max_workers is not None else (cap or DEFAULT_WORKERS)
    if cap is not None:
        requested = min(requested, cap)
    return max(1, requested)


class TaskRunner:
    """
    Runs a function over a sequence of items on a thread pool.

    Results are returned in input order. If any task raises, the remaining
    tasks still finish and the exception of the earliest failing item is
    re-raised, so numerical errors surface exactly as in a serial loop.

    Parameters
    ----------
    max_workers : int, optional
        Requested pool size (capped by ``MOR_NUM_THREADS``).

    Example
    -------
    >>> def on_progress(index, status):
    ...     print(f"task {index}: {status}")
    >>> runner = TaskRunner(max_workers=2)
    >>> runner.map(np.linalg.norm, matrices, progress_callback=on_progress)
    """

    def __init__(self, max_workers: Optional[int] = None) -> None:
        self.max_workers = resolve_workers(max_workers)

    def _run_one(
        self,
        index: int,
        func: Callable[[T], R],
        item: T,
        progress_callback: Optional[Callable[[int, str], None]],
    ) -> Tuple[int, Optional[R], Optional[BaseException]]:
        try:
            if progress_callback:
                progress_callback(index, "running")
            result = func(item)
            if progress_callback:
                progress_callback(index, "complete")
            return (index, result, None)
        except Exception as e:
            logger.debug(f"Task {index} failed: {e}")
            if progress_callback:
                progress_callback(index, "error")
            return (index, None, e)

    def map(
        self,
        func: Callable[[T], R],
        items: Sequence[T],
        progress_callback: Optional[Callable[[int, str], None]] = None,
    ) -> List[R]:
        """
        Apply ``func`` to every item and return results in input order.

        Parameters
        ----------
        func : callable
            Function of one argument.
        items : sequence
            Inputs.
        progress_callback : callable, optional
            Called with ``(index, status)``; status is one of
            ``'running'``, ``'complete'``, ``'error'``.

        Returns
        -------
        list
            ``[func(item) for item in items]``.
        """
        if not items:
            return []
        if self.max_workers == 1 or len(items) == 1:
            results: List[R] = []
            for index, item in enumerate(items):
                _, value, error = self._run_one(index, func, item, progress_callback)
                if error is not None:
                    raise error
                results.append(value)  # type: ignore[arg-type]
            return results

        slots: List[Any] = [None] * len(items)
        errors: List[Tuple[int, BaseException]] = []
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [
                executor.submit(self._run_one, i, func, item, progress_callback)
                for i, item in enumerate(items)
            ]
            for future in as_completed(futures):
                index, value, error = future.result()
                if error is not None:
                    errors.append((index, error))
                else:
                    slots[index] = value

        if errors:
            errors.sort(key=lambda pair: pair[0])
            raise errors[0][1]
        return slots

    def run_pair(
        self,
        first: Callable[[], R],
        second: Callable[[], T],
    ) -> Tuple[R, T]:
        """Run two independent thunks concurrently and return both results."""
        left, right = self.map(lambda thunk: thunk(), [first, second])  # type: ignore[list-item]
        return left, right  # type: ignore[return-value]


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
    progress_callback: Optional[Callable[[int, str], None]] = None,
) -> List[R]:
    """Ordered parallel map; see :meth:`TaskRunner.map`."""
    return TaskRunner(max_workers).map(func, items, progress_callback)
