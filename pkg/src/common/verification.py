#
# verification.py
# runs every identity and bound against brute force for one triple;
# used by `verify` and by the sweep variant of it
#
from __future__ import annotations

import logging
import random
from typing import Dict, Iterable, List

import numpy as np

from common.arith import TernaryTriple
from common.bounds import bound_report, case_counts, is_strictly_stronger
from common.coeffs import (
    all_coefficients,
    coefficient_at_variants,
    extrema,
    jump_decomposition,
    oracle_coefficients,
)
from common.errors import InvariantError
from common.fkseq import (
    FkContext,
    check_extreme_residue_bounds,
    check_octuple_identity,
    fk,
    fk_diff_q,
    fk_diff_r,
    fk_double_diff,
    fk_double_diff_general,
    fk_range,
    iter_fk,
    make_context,
)
from common.models import CheckResult

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    "fk_values",
    "fk_streams",
    "extreme_residues",
    "diff_q",
    "diff_r",
    "double_diff",
    "double_diff_pairs",
    "octuple",
    "oracle_equivalence",
    "vector_invariants",
    "n_count_forms",
    "jump_decomposition",
    "jump_one",
    "case_counts",
    "height_bounds",
    "bachman_comparison",
)

DEFAULT_SAMPLES = 200


class _FTable:
    # every F_k of the legal window, looked up by k
    def __init__(self, ctx: FkContext):
        self.low = ctx.window_low + 1
        self.high = ctx.window_high - 1
        self.values = fk_range(ctx, self.low, self.high)

    def __contains__(self, k: int) -> bool:
        return self.low <= k <= self.high

    def __getitem__(self, k: int) -> int:
        return int(self.values[k - self.low])


def _pick(rng: random.Random, lo: int, hi: int, exhaustive: bool, samples: int) -> List[int]:
    if hi < lo:
        return []
    if exhaustive or hi - lo + 1 <= samples:
        return list(range(lo, hi + 1))
    return sorted(rng.sample(range(lo, hi + 1), samples))


def _guarded(result: CheckResult, label: str, check) -> None:
    try:
        result.record(bool(check()), label)
    except InvariantError as e:
        result.record(False, f"{label}: {e}")


def verify_triple(
    triple: TernaryTriple,
    exhaustive: bool = False,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> Dict[str, CheckResult]:
    rng = random.Random(f"{seed}:{triple.p}:{triple.q}:{triple.r}")
    results = {name: CheckResult(check=name) for name in CHECK_NAMES}
    ctx = make_context(triple)
    p, q, r = triple.as_tuple()
    F = _FTable(ctx)
    tag = f"{triple}"

    # F_k level
    ks = _pick(rng, F.low, F.high, exhaustive, samples)
    for k in ks:
        where = f"{tag} k={k}"
        results["fk_values"].record(F[k] in (0, 1, 2) and fk(ctx, k) == F[k], f"{where}: F={F[k]}")
        _guarded(results["extreme_residues"], where, lambda: check_extreme_residue_bounds(ctx, k))
        if k - q in F:
            expected = F[k] - F[k - q]
            _guarded(results["diff_q"], f"{where} expected {expected}", lambda: fk_diff_q(ctx, k) == expected)
        if k - r in F:
            expected = F[k] - F[k - r]
            _guarded(results["diff_r"], f"{where} expected {expected}", lambda: fk_diff_r(ctx, k) == expected)
        if k - q - r in F:
            expected = F[k] - F[k - q] - F[k - r] + F[k - q - r]
            _guarded(results["double_diff"], f"{where} expected {expected}", lambda: fk_double_diff(ctx, k) == expected)
        for first, second in ((p, q), (p, r)):
            if k - first - second in F:
                expected = F[k] - F[k - first] - F[k - second] + F[k - first - second]
                _guarded(
                    results["double_diff_pairs"],
                    f"{where} shifts ({first},{second}) expected {expected}",
                    lambda: fk_double_diff_general(ctx, k, first, second) == expected,
                )
        if k - p - q - r in F:
            _guarded(results["octuple"], where, lambda: check_octuple_identity(ctx, k))

    # incremental walk against the vectorised stream
    stream_lo, stream_hi = (F.low, F.high) if exhaustive else (max(F.low, -p * q), min(F.high, p * q))
    walked = np.fromiter(iter_fk(ctx, stream_lo, stream_hi), dtype=np.int8)
    same = np.array_equal(walked, fk_range(ctx, stream_lo, stream_hi))
    results["fk_streams"].record(same, f"{tag} k in [{stream_lo}, {stream_hi}]")

    # coefficient level
    oracle = oracle_coefficients(triple)
    window = all_coefficients(ctx)
    if window == oracle:
        results["oracle_equivalence"].record(True, tag)
    else:
        n = int(np.flatnonzero(window.coeffs != oracle.coeffs)[0])
        results["oracle_equivalence"].record(False, f"{tag} n={n}: window {window[n]} vs oracle {oracle[n]}")

    deg = triple.degree
    summary = extrema(oracle)
    invariants_ok = (
        oracle[0] == 1
        and oracle[deg] == 1
        and oracle.is_palindrome()
        and oracle.evaluate_at_one() == 1
        and summary.height <= p - 1
    )
    results["vector_invariants"].record(invariants_ok, f"{tag}: monic/palindrome/value-at-1/Bang")
    results["jump_one"].record(summary.max_jump <= 1, f"{tag}: max jump {summary.max_jump}")

    for n in _pick(rng, 0, deg, exhaustive, samples):
        where = f"{tag} n={n}"
        expected = oracle[n]
        _guarded(
            results["n_count_forms"],
            f"{where} expected {expected}",
            lambda: set(coefficient_at_variants(ctx, n)) == {expected},
        )
        _guarded(results["case_counts"], where, lambda: case_counts(ctx, n, coefficient=expected) is not None)

    for n in _pick(rng, 0, deg + 1, exhaustive, samples):
        expected = oracle[n] - oracle[n - 1]

        def jump_ok() -> bool:
            decomposition = jump_decomposition(ctx, n)
            extreme = {decomposition.n_plus, decomposition.n_minus} == {0, 4}
            return decomposition.difference == expected and not extreme

        _guarded(results["jump_decomposition"], f"{tag} n={n} expected {expected}", jump_ok)

    _guarded(results["height_bounds"], tag, lambda: bound_report(ctx, oracle) is not None)
    _guarded(results["bachman_comparison"], tag, lambda: is_strictly_stronger(ctx) in (True, False))

    failed = [name for name, result in results.items() if result.failed]
    if failed:
        logger.error(f"{tag}: failing checks {failed}")
    else:
        logger.debug(f"{tag}: all checks passed")
    return results


def merge_results(per_triple: Iterable[Dict[str, CheckResult]]) -> List[CheckResult]:
    merged = {name: CheckResult(check=name) for name in CHECK_NAMES}
    for results in per_triple:
        for name, result in results.items():
            merged[name].merge(result)
    return [merged[name] for name in CHECK_NAMES]


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(result.failed == 0 for result in results)
