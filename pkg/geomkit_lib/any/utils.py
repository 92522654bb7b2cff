"""Utility helpers for geomkit-lib."""

from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import TypeVar

from partsnap_logger.logging import psnap_get_logger

LOGGER = psnap_get_logger("geomkit_lib.any.utils")

T = TypeVar("T")
R = TypeVar("R")


class OrderedTaskRunner:
    """
    Run independent tasks on a thread pool and return results in submission order.

    numpy's linear algebra releases the GIL, so span and rank computations over many
    subsets overlap well on threads. Results are always aggregated in input order,
    which keeps every report independent of scheduling.

    Example:
    -------
        ```python
        from geomkit_lib.any.utils import OrderedTaskRunner

        runner = OrderedTaskRunner(max_workers=4)
        dims = runner.map(lambda subset: sphere_dim(span(subset)), subsets)
        ```

    """

    def __init__(self, max_workers: int = 1):
        """
        Initialize the runner.

        Args:
        ----
            max_workers: Thread count; 1 runs inline without a pool

        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be >= 1, got {max_workers}")
        self.max_workers = max_workers

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """
        Apply ``fn`` to every item and return the results in input order.

        Exceptions raised by ``fn`` propagate to the caller (the first one in input order).
        """
        batch = list(items)
        if self.max_workers == 1 or len(batch) <= 1:
            return [fn(item) for item in batch]

        LOGGER.debug(f"Running {len(batch)} tasks on {self.max_workers} threads")
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(fn, batch))


def colex_combinations(count: int, size: int) -> Iterator[tuple[int, ...]]:
    """
    All ``size``-subsets of ``range(count)`` in colexicographic order.

    Every subset of the first m indices comes before any subset using index m, so searches
    over subsets reach structure among early items without scanning the whole range first.

    Example:
    -------
        >>> list(colex_combinations(4, 2))
        [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]

    """
    if size < 1:
        return
    for top in range(size - 1, count):
        for rest in combinations(range(top), size - 1):
            yield (*rest, top)
