"""Optional thread fan-out for parameter sweeps.

``CUBE_COVER_THREADS`` sets the worker count (0 or unset: run inline).
Results always come back in input order, so output never depends on it.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV = "CUBE_COVER_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV, "").strip()
    if not raw:
        return 0
    try:
        k = int(raw)
    except ValueError:
        raise ValueError(f"{ENV} must be a nonnegative integer, got {raw!r}") from None
    if k < 0:
        raise ValueError(f"{ENV} must be a nonnegative integer, got {raw!r}")
    return k


def pmap(fn, items) -> list:
    items = list(items)
    k = thread_count()
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))
