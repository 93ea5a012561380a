#
# coeffs.py
# coefficients of Phi_pqr: an independent series oracle, the per-index
# F_k identity and an O(deg) sliding window over four F_k streams
#
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Tuple

import numpy as np

from common.arith import TernaryTriple
from common.errors import (
    DegreeTooLargeError,
    IdentityViolationError,
    IndexOutOfRangeError,
    OddN1SumError,
)
from common.fkseq import FkContext, fk_unchecked, fk_range
from common.models import ExtremaSummary

logger = logging.getLogger(__name__)

MAX_DEGREE = 10**8
DEFAULT_CHUNK_SIZE = 1 << 20


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    triple: TernaryTriple
    coeffs: np.ndarray  # int32, index n = 0 .. deg

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        # zero outside [0, deg]
        if 0 <= n < len(self.coeffs):
            return int(self.coeffs[n])
        return 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientVector):
            return NotImplemented
        return self.triple == other.triple and np.array_equal(self.coeffs, other.coeffs)

    def evaluate_at_one(self) -> int:
        return int(self.coeffs.sum(dtype=np.int64))

    def is_palindrome(self) -> bool:
        return bool(np.array_equal(self.coeffs, self.coeffs[::-1]))

    def to_rows(self) -> Iterator[dict]:
        for n, value in enumerate(self.coeffs.tolist()):
            yield {"n": n, "coefficient": value}


def _check_degree(triple: TernaryTriple) -> int:
    deg = triple.degree
    if deg > MAX_DEGREE:
        raise DegreeTooLargeError(f"degree {deg} of {triple} exceeds {MAX_DEGREE}")
    return deg


def _check_index(ctx: FkContext, n: int, upper: int) -> None:
    if not (0 <= n <= upper):
        raise IndexOutOfRangeError(f"n={n} outside [0, {upper}] for {ctx.triple}")


def _divide_by_one_minus_x_power(series: np.ndarray, d: int) -> np.ndarray:
    # 1/(1 - x^d) on a truncated series is a running sum at stride d
    length = len(series)
    if d >= length:
        return series
    padded = np.zeros(-(-length // d) * d, dtype=series.dtype)
    padded[:length] = series
    return np.cumsum(padded.reshape(-1, d), axis=0).ravel()[:length]


def oracle_coefficients(triple: TernaryTriple) -> CoefficientVector:
    """Phi_pqr from the formal series, with no reference to F_k.

    Phi_pqr = (1-x^pqr)(1-x^p)(1-x^q)(1-x^r) / ((1-x)(1-x^qr)(1-x^rp)(1-x^pq));
    the x^pqr term lies past the degree and drops out of the truncation.
    """
    deg = _check_degree(triple)
    p, q, r = triple.as_tuple()

    series = np.zeros(deg + 1, dtype=np.int64)
    for exponent, sign in (
        (0, 1), (p, -1), (q, -1), (r, -1),
        (p + q, 1), (q + r, 1), (r + p, 1), (p + q + r, -1),
    ):
        if exponent <= deg:
            series[exponent] += sign

    for d in (1, q * r, r * p, p * q):
        series = _divide_by_one_minus_x_power(series, d)

    return CoefficientVector(triple=triple, coeffs=series.astype(np.int32))


def _zeros(*values: int) -> int:
    return sum(1 for v in values if v == 0)


def _ones(*values: int) -> int:
    return sum(1 for v in values if v == 1)


def _twos(*values: int) -> int:
    return sum(1 for v in values if v == 2)


def _window_quadruples(ctx: FkContext, n: int) -> Iterator[Tuple[int, int, int, int]]:
    # (F_k, F_{k-q}, F_{k-r}, F_{k-q-r}) for k = n-p+1 .. n
    q, r = ctx.q, ctx.r
    for k in range(n - ctx.p + 1, n + 1):
        yield (
            fk_unchecked(ctx, k),
            fk_unchecked(ctx, k - q),
            fk_unchecked(ctx, k - r),
            fk_unchecked(ctx, k - q - r),
        )


def coefficient_at(ctx: FkContext, n: int) -> int:
    _check_index(ctx, n, ctx.triple.degree)
    return sum(
        _zeros(f0, fqr) - _zeros(fq, fr)
        for f0, fq, fr, fqr in _window_quadruples(ctx, n)
    )


class CoefficientVariants(NamedTuple):
    via_n0: int
    via_n2: int
    via_half_n1: int


def coefficient_at_variants(ctx: FkContext, n: int) -> CoefficientVariants:
    _check_index(ctx, n, ctx.triple.degree)
    via_n0 = via_n2 = n1_sum = 0
    for f0, fq, fr, fqr in _window_quadruples(ctx, n):
        via_n0 += _zeros(f0, fqr) - _zeros(fq, fr)
        via_n2 += _twos(f0, fqr) - _twos(fq, fr)
        n1_sum += _ones(fq, fr) - _ones(f0, fqr)

    if n1_sum % 2 != 0:
        raise OddN1SumError(f"{ctx.triple}, n={n}: N1 sum {n1_sum} is odd")
    return CoefficientVariants(via_n0=via_n0, via_n2=via_n2, via_half_n1=n1_sum // 2)


def all_coefficients(ctx: FkContext, chunk_size: int = DEFAULT_CHUNK_SIZE) -> CoefficientVector:
    """Every coefficient in O(deg) work.

    With g(k) = [F_k=0] - [F_{k-q}=0] - [F_{k-r}=0] + [F_{k-q-r}=0] and
    G its running sum from k = 1-p, a(n) = G(n) - G(n-p). The last p
    values of G are carried between blocks.
    """
    deg = _check_degree(ctx.triple)
    p, q, r = ctx.triple.as_tuple()
    out = np.empty(deg + 1, dtype=np.int32)

    # G(k) for the p indices just before the current block; G = 0 before 1-p
    tail = np.zeros(p, dtype=np.int64)
    start = 1 - p
    while start <= deg:
        stop = min(start + chunk_size, deg + 1)
        g = (
            (fk_range(ctx, start, stop - 1) == 0).astype(np.int64)
            - (fk_range(ctx, start - q, stop - 1 - q) == 0)
            - (fk_range(ctx, start - r, stop - 1 - r) == 0)
            + (fk_range(ctx, start - q - r, stop - 1 - q - r) == 0)
        )
        running = np.concatenate((tail, tail[-1] + np.cumsum(g)))
        window = running[p:] - running[:-p]

        # blocks ending at or before n = 0 only feed the carried tail
        if stop > 0:
            first = max(start, 0)
            out[first:stop] = window[first - start:]
        tail = running[-p:]
        start = stop

    logger.debug(f"sliding window finished for {ctx.triple}, deg={deg}")
    return CoefficientVector(triple=ctx.triple, coeffs=out)


def extrema(v: CoefficientVector) -> ExtremaSummary:
    coeffs = v.coeffs.astype(np.int64)
    a_plus = int(coeffs.max())
    a_minus = int(coeffs.min())
    padded = np.concatenate(([0], coeffs, [0]))
    return ExtremaSummary(
        a_plus=a_plus,
        a_minus=a_minus,
        height=max(a_plus, -a_minus),
        max_jump=int(np.abs(np.diff(padded)).max()),
    )


class JumpDecomposition(NamedTuple):
    n_plus: int
    n_minus: int
    via_zeros: int
    via_twos: int

    @property
    def difference(self) -> int:
        return (self.n_minus - self.n_plus) // 2


def jump_decomposition(ctx: FkContext, n: int) -> JumpDecomposition:
    """Express a(n) - a(n-1) through the eight F values around n."""
    _check_index(ctx, n, ctx.triple.degree + 1)
    p, q, r = ctx.triple.as_tuple()
    outer = tuple(fk_unchecked(ctx, k) for k in (n, n - p - q, n - q - r, n - r - p))
    inner = tuple(fk_unchecked(ctx, k) for k in (n - p, n - q, n - r, n - p - q - r))

    decomposition = JumpDecomposition(
        n_plus=_ones(*outer),
        n_minus=_ones(*inner),
        via_zeros=_zeros(*outer) - _zeros(*inner),
        via_twos=_twos(*outer) - _twos(*inner),
    )
    delta = decomposition.n_minus - decomposition.n_plus
    if delta % 2 != 0 or not (delta // 2 == decomposition.via_zeros == decomposition.via_twos):
        raise IdentityViolationError(f"{ctx.triple}, n={n}: inconsistent jump forms {decomposition}")
    return decomposition


def coefficients(ctx: FkContext, method: str = "fk", chunk_size: int = DEFAULT_CHUNK_SIZE) -> CoefficientVector:
    """Dispatch used by the cli: 'oracle', 'fk' or 'both' (cross-checked)."""
    if method == "oracle":
        return oracle_coefficients(ctx.triple)
    window = all_coefficients(ctx, chunk_size=chunk_size)
    if method == "both":
        oracle = oracle_coefficients(ctx.triple)
        if window != oracle:
            mismatch = int(np.flatnonzero(window.coeffs != oracle.coeffs)[0])
            raise IdentityViolationError(
                f"{ctx.triple}: sliding window and oracle differ first at n={mismatch} "
                f"({window[mismatch]} vs {oracle[mismatch]})"
            )
    elif method != "fk":
        raise ValueError(f"unknown method {method!r}")
    return window

