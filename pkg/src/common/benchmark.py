#
# benchmark.py
# wall time of the three ways to get coefficients: series oracle,
# sliding window over F_k and pointwise queries
#
from __future__ import annotations

import logging
import random
import statistics
import time
from typing import Callable, List, Tuple

from common.arith import TernaryTriple
from common.coeffs import DEFAULT_CHUNK_SIZE, all_coefficients, coefficient_at, oracle_coefficients
from common.errors import IdentityViolationError
from common.fkseq import make_context
from common.models import BenchRow

logger = logging.getLogger(__name__)

DEFAULT_REPEATS = 3
DEFAULT_POINT_QUERIES = 100


def _timed(func: Callable, repeats: int) -> Tuple[object, float]:
    # last result and the median of the wall times, in ms
    timings = []
    result = None
    for _ in range(repeats):
        started = time.perf_counter()
        result = func()
        timings.append((time.perf_counter() - started) * 1000.0)
    return result, statistics.median(timings)


def _row(triple: TernaryTriple, method: str, repeats: int, median_ms: float, count: int) -> BenchRow:
    per_s = count / (median_ms / 1000.0) if median_ms > 0 else float("inf")
    return BenchRow(
        p=triple.p,
        q=triple.q,
        r=triple.r,
        deg=triple.degree,
        method=method,
        repeats=repeats,
        median_ms=round(median_ms, 3),
        coefficients=count,
        coefficients_per_s=round(per_s, 1),
    )


def bench_triple(
    triple: TernaryTriple,
    point_queries: int = DEFAULT_POINT_QUERIES,
    repeats: int = DEFAULT_REPEATS,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> List[BenchRow]:
    """Time every method; raise before reporting anything if they disagree."""
    ctx = make_context(triple)
    oracle, oracle_ms = _timed(lambda: oracle_coefficients(triple), repeats)
    window, window_ms = _timed(lambda: all_coefficients(ctx, chunk_size=chunk_size), repeats)
    if window != oracle:
        raise IdentityViolationError(f"{triple}: sliding window and oracle disagree")

    rng = random.Random(f"{seed}:{triple.p}:{triple.q}:{triple.r}")
    indices = [rng.randint(0, triple.degree) for _ in range(point_queries)]
    points, points_ms = _timed(lambda: [coefficient_at(ctx, n) for n in indices], 1)
    for n, value in zip(indices, points):
        if value != oracle[n]:
            raise IdentityViolationError(f"{triple}, n={n}: point query {value} vs oracle {oracle[n]}")

    count = triple.degree + 1
    logger.info(f"{triple}: oracle {oracle_ms:.1f} ms, window {window_ms:.1f} ms, {len(indices)} points {points_ms:.1f} ms")
    return [
        _row(triple, "oracle", repeats, oracle_ms, count),
        _row(triple, "fk_window", repeats, window_ms, count),
        _row(triple, "fk_point", 1, points_ms, len(indices)),
    ]


def sample_triples(triples: List[TernaryTriple], sample: int, seed: int = 0) -> List[TernaryTriple]:
    if sample >= len(triples):
        return list(triples)
    return sorted(random.Random(seed).sample(triples, sample))
