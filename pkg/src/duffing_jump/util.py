"""Shared plumbing: deterministic parallel mapping over grid samples."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def default_threads() -> int:
    return os.cpu_count() or 1


def parallel_map(fn, items, threads: int | None):
    """Map preserving input order; threads=None or 1 stays serial.

    The numba kernels in this package release the GIL, so grid sweeps
    scale with real threads while results stay in deterministic order.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as ex:
        return list(ex.map(fn, items))
