"""
Bounded thread pool for independent work items.

Work items carry their own seeds, so results do not depend on how the pool
schedules them. The cap comes from AppConfig.threads (RBIG_THREADS).
"""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, then configuration, then min(4, cpu count)."""
    if threads is not None:
        return max(1, int(threads))

    from rbig_kit.config import get_config

    configured = get_config().threads
    if configured is not None:
        return configured
    return max(1, min(4, os.cpu_count() or 1))


def map_chunks(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Apply fn to every item, in parallel when allowed, preserving order."""
    workers = min(resolve_threads(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
