"""Ordered parallel map for scans over immutable portrait data.

Results are returned in input order, so any reduction over them is
independent of the worker count; certificates built from pmap output are
byte-identical for 1 and N workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

__all__ = ["pmap"]


def pmap(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map fn over items, preserving order; fork a pool when workers > 1."""
    data: Sequence[T] = items if isinstance(items, Sequence) else list(items)
    if workers <= 1 or len(data) < 4:
        return [fn(x) for x in data]
    chunk = max(1, len(data) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, data, chunksize=chunk))
