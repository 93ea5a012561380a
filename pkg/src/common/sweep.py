#
# sweep.py
# enumerates ternary triples under a pqr cap and evaluates them in a
# worker pool; rows always come back in (p, q, r) order
#
from __future__ import annotations

import logging
import time
from functools import partial
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, TypeVar

from common.arith import TernaryTriple, primes_in
from common.bounds import bound_report, corollary_s_class
from common.coeffs import DEFAULT_CHUNK_SIZE, all_coefficients, extrema
from common.errors import RequiresPGreaterThan3Error, SweepTooLargeError
from common.fkseq import make_context
from common.models import SweepRow

logger = logging.getLogger(__name__)

T = TypeVar("T")

SMALLEST_PRODUCT = 3 * 5 * 7

# the sieve runs to pqr_max / 15, one byte per integer
MAX_SWEEP_PRODUCT = 10**9


def enumerate_triples(pqr_max: int, p_max: Optional[int] = None) -> List[TernaryTriple]:
    """All odd-prime triples p < q < r with pqr <= pqr_max, sorted."""
    if pqr_max > MAX_SWEEP_PRODUCT:
        raise SweepTooLargeError(f"pqr limit {pqr_max} exceeds the sweep limit {MAX_SWEEP_PRODUCT}")
    if pqr_max < SMALLEST_PRODUCT:
        return []
    primes = primes_in(3, pqr_max // 15)
    triples = []
    for i, p in enumerate(primes):
        if p ** 3 > pqr_max or (p_max is not None and p > p_max):
            break
        for j in range(i + 1, len(primes)):
            q = primes[j]
            if p * q * q > pqr_max:
                break
            for r in primes[j + 1:]:
                if p * q * r > pqr_max:
                    break
                triples.append(TernaryTriple(p, q, r))
    return triples


def sweep_row(triple: TernaryTriple, chunk_size: int = DEFAULT_CHUNK_SIZE, timed: bool = False) -> SweepRow:
    started = time.perf_counter()
    ctx = make_context(triple)
    vector = all_coefficients(ctx, chunk_size=chunk_size)
    summary = extrema(vector)
    report = bound_report(ctx, vector)
    try:
        guarantee = corollary_s_class(ctx)
    except RequiresPGreaterThan3Error:
        guarantee = None
    elapsed_ms = round((time.perf_counter() - started) * 1000.0, 3) if timed else None

    return SweepRow(
        p=triple.p,
        q=triple.q,
        r=triple.r,
        deg=triple.degree,
        alpha=ctx.alpha,
        beta=ctx.beta,
        beta_star=ctx.beta_star,
        a_plus=summary.a_plus,
        a_minus=summary.a_minus,
        a=summary.height,
        max_jump=summary.max_jump,
        bound_new=report.bound_new,
        bound_bachman=report.bound_bachman,
        bound_beiter=report.bound_beiter,
        bound_bang=report.bound_bang,
        tight_flag=bool(report.tight),
        corollary_s_guarantee=guarantee,
        elapsed_ms=elapsed_ms,
    )


def run_parallel(func: Callable[[TernaryTriple], T], triples: Iterable[TernaryTriple], workers: int) -> List[T]:
    """Apply func to every triple, keeping input order whatever the worker count.

    func must be a module-level callable so the pool can pickle it.
    """
    triples = sorted(triples)
    if workers <= 1 or len(triples) <= 1:
        return [func(t) for t in triples]

    results = []
    with Pool(processes=workers) as pool:
        for index, result in enumerate(pool.imap(func, triples, chunksize=max(1, len(triples) // (workers * 8)))):
            results.append(result)
            if (index + 1) % 100 == 0:
                logger.info(f"processed {index + 1}/{len(triples)} triples")
    return results


def run_sweep(
    triples: Iterable[TernaryTriple],
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    timed: bool = False,
) -> List[SweepRow]:
    triples = list(triples)
    logger.info(f"sweeping {len(triples)} triples with {workers} worker(s)")
    return run_parallel(partial(sweep_row, chunk_size=chunk_size, timed=timed), triples, workers)
