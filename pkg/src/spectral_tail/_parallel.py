"""Deterministic worker-pool helpers.

Work items are always reduced in input order, so results are identical for
any worker count; SPECTRAL_TAIL_THREADS caps the pool size.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_count", "ordered_map"]


def thread_count(requested: int | None = None) -> int:
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("SPECTRAL_TAIL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(
                f"SPECTRAL_TAIL_THREADS must be an integer, got {env!r}"
            ) from None
    return min(8, os.cpu_count() or 1)


def ordered_map(fn, items, threads: int | None = None) -> list:
    """Map ``fn`` over ``items`` preserving order."""
    items = list(items)
    n = thread_count(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
