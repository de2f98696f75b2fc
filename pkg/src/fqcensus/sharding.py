"""Split an enumeration into contiguous code ranges and run them on a pool.

The shard plan depends only on the size of the search space, never on the
worker count, and results come back in shard order.  Changing ``jobs``
therefore changes nothing but wall-clock time.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

MAX_SHARDS = 64
MIN_SHARD_SIZE = 4096


def plan_shards(total: int, max_shards: int = MAX_SHARDS, min_size: int = MIN_SHARD_SIZE) -> list[tuple[int, int]]:
    if total <= 0:
        return [(0, 0)]
    count = max(1, min(max_shards, total // min_size))
    step, extra = divmod(total, count)
    out, lo = [], 0
    for i in range(count):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def default_jobs() -> int:
    env = os.environ.get("FQCENSUS_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sharded(
    fn: Callable[..., T],
    args: Sequence,
    shards: Sequence[tuple[int, int]],
    jobs: int | None = None,
) -> list[T]:
    """Call ``fn(*args, lo, hi)`` for every shard; results in shard order."""
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(shards) <= 1:
        return [fn(*args, lo, hi) for lo, hi in shards]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(jobs, len(shards)), mp_context=ctx) as pool:
        futures = [pool.submit(fn, *args, lo, hi) for lo, hi in shards]
        return [f.result() for f in futures]
