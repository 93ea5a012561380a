import numpy as np
import pytest

from common.arith import TernaryTriple
from common.errors import OutOfWindowError
from common.fkseq import (
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

SMALL_TRIPLES = [(3, 5, 7), (3, 5, 11), (3, 7, 11), (5, 7, 11), (5, 11, 13)]


def window_values(ctx):
    lo, hi = ctx.window_low + 1, ctx.window_high - 1
    return lo, hi, {k: fk(ctx, k) for k in range(lo, hi + 1)}


def test_context_for_105():
    ctx = make_context(TernaryTriple(3, 5, 7))
    assert (ctx.qp_inv, ctx.rp_inv) == (2, 1)
    assert (ctx.alpha, ctx.beta, ctx.beta_star) == (1, 2, 1)
    assert (ctx.window_low, ctx.window_high) == (-71, 105)


def test_context_for_385():
    ctx = make_context(TernaryTriple(5, 7, 11))
    assert (ctx.alpha, ctx.beta, ctx.beta_star) == (1, 3, 2)


def test_small_values():
    ctx = make_context(TernaryTriple(3, 5, 7))
    assert fk(ctx, 0) == 0
    # k = -1 has a = 1, b = 4, c = 6: (35 + 84 + 90 + 1) / 105 = 2
    assert fk(ctx, -1) == 2
    values = fk_range(ctx, -70, 104)
    assert set(np.unique(values).tolist()) <= {0, 1, 2}


def test_window_is_exclusive():
    ctx = make_context(TernaryTriple(3, 5, 7))
    with pytest.raises(OutOfWindowError):
        fk(ctx, 105)
    with pytest.raises(OutOfWindowError):
        fk(ctx, -71)
    with pytest.raises(OutOfWindowError):
        fk_range(ctx, -71, 0)
    fk(ctx, 104)
    fk(ctx, -70)


@pytest.mark.parametrize("primes", SMALL_TRIPLES)
def test_streams_agree(primes):
    ctx = make_context(TernaryTriple(*primes))
    lo, hi, direct = window_values(ctx)
    walked = list(iter_fk(ctx, lo, hi))
    vectorised = fk_range(ctx, lo, hi).tolist()
    assert walked == vectorised == [direct[k] for k in range(lo, hi + 1)]


@pytest.mark.parametrize("primes", SMALL_TRIPLES)
def test_difference_lemmas_exhaustive(primes):
    ctx = make_context(TernaryTriple(*primes))
    p, q, r = ctx.triple.as_tuple()
    lo, hi, F = window_values(ctx)

    for k in range(lo, hi + 1):
        assert F[k] in (0, 1, 2)
        assert check_extreme_residue_bounds(ctx, k), f"k={k}"
        if k - q >= lo:
            assert fk_diff_q(ctx, k) == F[k] - F[k - q], f"q-difference at k={k}"
        if k - r >= lo:
            assert fk_diff_r(ctx, k) == F[k] - F[k - r], f"r-difference at k={k}"
        if k - q - r >= lo:
            expected = F[k] - F[k - q] - F[k - r] + F[k - q - r]
            assert fk_double_diff(ctx, k) == expected, f"double difference at k={k}"
        for first, second in ((p, q), (p, r), (q, r)):
            if k - first - second >= lo:
                expected = F[k] - F[k - first] - F[k - second] + F[k - first - second]
                assert fk_double_diff_general(ctx, k, first, second) == expected, (
                    f"double difference ({first},{second}) at k={k}"
                )
        if k - p - q - r >= lo:
            assert check_octuple_identity(ctx, k), f"octuple identity at k={k}"


def test_general_double_difference_matches_qr_form():
    ctx = make_context(TernaryTriple(5, 11, 13))
    for k in range(0, 300):
        assert fk_double_diff_general(ctx, k, 11, 13) == fk_double_diff(ctx, k)


def test_general_double_difference_rejects_foreign_shift():
    ctx = make_context(TernaryTriple(3, 5, 7))
    with pytest.raises(ValueError):
        fk_double_diff_general(ctx, 50, 5, 11)


def test_large_triple_range_stays_exact():
    # pqr close to the cap; the vectorised path must not overflow
    ctx = make_context(TernaryTriple.of(10007, 10009, 10037))
    k0 = ctx.window_high - 1000
    vectorised = fk_range(ctx, k0, k0 + 50).tolist()
    assert vectorised == [fk(ctx, k) for k in range(k0, k0 + 51)]
