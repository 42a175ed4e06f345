"""Deterministic fan-out over a thread pool.

Work is split into contiguous chunks and results are merged back in chunk
order, so the output is the same list regardless of worker count or
scheduling — callers get parallelism without giving up reproducibility.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunk_map(fn: Callable[[Sequence[T]], list[R]], items: Sequence[T], workers: int = 1) -> list[R]:
    """Apply ``fn`` to contiguous chunks of ``items`` and concatenate results in order.

    ``fn`` receives a sub-sequence and must return a list. With ``workers <= 1``
    (or fewer than two items) the call degenerates to ``fn(items)`` on the
    current thread.
    """
    n = len(items)
    if workers <= 1 or n < 2:
        return list(fn(items))
    workers = min(workers, n)
    size = (n + workers - 1) // workers
    chunks = [items[i : i + size] for i in range(0, n, size)]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(fn, chunks))
    out: list[R] = []
    for part in parts:
        out.extend(part)
    return out
