"""Thread-pool helpers whose results do not depend on the worker count."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple, TypeVar

from config.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

Hit = Optional[Tuple[Any, Any]]


def resolve_threads(threads: Optional[int] = None) -> int:
    return max(1, settings.THREADS if threads is None else threads)


def split(items: Sequence[T], parts: int) -> List[Sequence[T]]:
    """Cut items into at most `parts` contiguous slices, keeping order."""
    if not len(items):
        return []
    parts = min(parts, len(items))
    size, extra = divmod(len(items), parts)
    slices, start = [], 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        slices.append(items[start:end])
        start = end
    return slices


def least_hit(items: Sequence[T], scan_slice: Callable[[Sequence[T]], Hit], threads: Optional[int] = None) -> Hit:
    """
    Search items in contiguous slices and return the hit with the least key.

    scan_slice scans one slice in order and returns its first hit as (key, payload),
    or None. Keys must grow with position in items, so the merged answer is the
    first hit of a single sequential scan regardless of the worker count.
    """
    workers = resolve_threads(threads)
    if workers == 1 or len(items) < 2:
        return scan_slice(items)

    chunks = split(items, workers)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        hits = [hit for hit in pool.map(scan_slice, chunks) if hit is not None]
    logger.debug(f"Searched {len(items)} heads on {len(chunks)} workers, {len(hits)} slice hits")
    return min(hits, key=lambda hit: hit[0]) if hits else None


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Map fn over items on a pool, results in input order."""
    workers = resolve_threads(threads)
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
