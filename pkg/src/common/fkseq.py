#
# fkseq.py
# the F_k sequence of a ternary triple and the lemmas about it
#
# F_k = (a_k qr + b_k rp + c_k pq - k) / pqr lies in {0, 1, 2}
# for every k in the window -(qr + rp + pq) < k < pqr
#
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from common.arith import TernaryTriple, crt_residues, mod_inverse
from common.errors import IdentityViolationError, OutOfWindowError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FkContext:
    triple: TernaryTriple

    # inverses used to extract a_k, b_k, c_k
    qr_inv_p: int
    rp_inv_q: int
    pq_inv_r: int

    # q', r' (mod p) and p_q', p_r'
    qp_inv: int
    rp_inv: int
    p_q_inv: int
    p_r_inv: int

    M: int
    m: int
    alpha: int
    beta: int
    beta_star: int

    @property
    def p(self) -> int:
        return self.triple.p

    @property
    def q(self) -> int:
        return self.triple.q

    @property
    def r(self) -> int:
        return self.triple.r

    @property
    def window_low(self) -> int:
        # exclusive
        p, q, r = self.triple.as_tuple()
        return -(q * r + r * p + p * q)

    @property
    def window_high(self) -> int:
        # exclusive
        return self.triple.n


def make_context(triple: TernaryTriple) -> FkContext:
    p, q, r = triple.as_tuple()

    qp_inv = mod_inverse(q, p)
    rp_inv = mod_inverse(r, p)
    M, m = max(qp_inv, rp_inv), min(qp_inv, rp_inv)

    alpha = min(qp_inv, rp_inv, p - qp_inv, p - rp_inv)
    beta = mod_inverse(alpha * q * r, p)
    beta_star = min(beta, p - beta)

    # second derivation of (alpha, beta) from M and m
    if M + m >= p:
        expected = (p - M, p - m)
    else:
        expected = (m, M)
    if (alpha, beta) != expected:
        raise IdentityViolationError(
            f"{triple}: alpha/beta {(alpha, beta)} disagree with M/m characterization {expected}"
        )
    if not (1 <= alpha <= beta_star <= (p - 1) // 2):
        raise IdentityViolationError(f"{triple}: expected 1 <= alpha <= beta* <= (p-1)/2, got {alpha}, {beta_star}")

    ctx = FkContext(
        triple=triple,
        qr_inv_p=mod_inverse(q * r, p),
        rp_inv_q=mod_inverse(r * p, q),
        pq_inv_r=mod_inverse(p * q, r),
        qp_inv=qp_inv,
        rp_inv=rp_inv,
        p_q_inv=mod_inverse(p, q),
        p_r_inv=mod_inverse(p, r),
        M=M,
        m=m,
        alpha=alpha,
        beta=beta,
        beta_star=beta_star,
    )
    logger.debug(f"context {triple}: q'={qp_inv} r'={rp_inv} alpha={alpha} beta={beta} beta*={beta_star}")
    return ctx


def check_window(ctx: FkContext, *ks: int) -> None:
    for k in ks:
        if not (ctx.window_low < k < ctx.window_high):
            raise OutOfWindowError(
                f"k={k} outside ({ctx.window_low}, {ctx.window_high}) for {ctx.triple}"
            )


def fk_unchecked(ctx: FkContext, k: int) -> int:
    # caller guarantees the window
    p, q, r = ctx.triple.as_tuple()
    a_k = (k * ctx.qr_inv_p) % p
    b_k = (k * ctx.rp_inv_q) % q
    c_k = (k * ctx.pq_inv_r) % r
    value, remainder = divmod(a_k * q * r + b_k * r * p + c_k * p * q - k, p * q * r)
    if remainder != 0:
        raise IdentityViolationError(f"{ctx.triple}: pqr does not divide the numerator of F_{k}")
    return value


def fk(ctx: FkContext, k: int) -> int:
    check_window(ctx, k)
    return fk_unchecked(ctx, k)


def iter_fk(ctx: FkContext, lo: int, hi: int) -> Iterator[int]:
    """Yield F_lo .. F_hi walking the residues one step at a time."""
    check_window(ctx, lo, hi)
    p, q, r = ctx.triple.as_tuple()
    qr, rp, pq, n = q * r, r * p, p * q, p * q * r

    a_k, b_k, c_k = crt_residues(ctx.triple, lo)
    # numerator of F_k, kept in sync with the residues
    total = a_k * qr + b_k * rp + c_k * pq - lo
    for _ in range(lo, hi + 1):
        yield total // n
        # k -> k+1: each residue grows by its inverse step and wraps at most once
        a_k += ctx.qr_inv_p
        total += ctx.qr_inv_p * qr
        if a_k >= p:
            a_k -= p
            total -= n
        b_k += ctx.rp_inv_q
        total += ctx.rp_inv_q * rp
        if b_k >= q:
            b_k -= q
            total -= n
        c_k += ctx.pq_inv_r
        total += ctx.pq_inv_r * pq
        if c_k >= r:
            c_k -= r
            total -= n
        total -= 1


def fk_range(ctx: FkContext, lo: int, hi: int) -> np.ndarray:
    """F_lo .. F_hi as an int8 array, computed without any python loop."""
    check_window(ctx, lo, hi)
    if hi < lo:
        return np.zeros(0, dtype=np.int8)
    p, q, r = ctx.triple.as_tuple()
    qr, rp, n = q * r, r * p, p * q * r

    k = np.arange(lo, hi + 1, dtype=np.int64)
    a_k = ((k % p) * ctx.qr_inv_p) % p
    b_k = ((k % q) * ctx.rp_inv_q) % q
    # c_k pq is the remaining part of k modulo pqr, this avoids products of size r^2
    c_pq = (k - a_k * qr - b_k * rp) % n
    values = (a_k * qr + b_k * rp + c_pq - k) // n
    return values.astype(np.int8)


def fk_diff_q(ctx: FkContext, k: int) -> int:
    """F_k - F_{k-q} from a_k and c_k alone."""
    check_window(ctx, k, k - ctx.q)
    res = crt_residues(ctx.triple, k)
    if res.a_k < ctx.rp_inv and res.c_k < ctx.p_r_inv:
        return -1
    if res.a_k >= ctx.rp_inv and res.c_k >= ctx.p_r_inv:
        return 1
    return 0


def fk_diff_r(ctx: FkContext, k: int) -> int:
    """F_k - F_{k-r}: the q/r mirror of fk_diff_q, using b_k, q' and p_q'."""
    check_window(ctx, k, k - ctx.r)
    res = crt_residues(ctx.triple, k)
    if res.a_k < ctx.qp_inv and res.b_k < ctx.p_q_inv:
        return -1
    if res.a_k >= ctx.qp_inv and res.b_k >= ctx.p_q_inv:
        return 1
    return 0


def _five_branch(x: int, M: int, m: int, modulus: int) -> int:
    if x < M + m - modulus:
        return 0
    if x < m:
        return -1
    if x < M:
        return 0
    if x < M + m:
        return 1
    return 0


def fk_double_diff(ctx: FkContext, k: int) -> int:
    """F_k - F_{k-q} - F_{k-r} + F_{k-q-r}, a function of a_k only."""
    check_window(ctx, k, k - ctx.q, k - ctx.r, k - ctx.q - ctx.r)
    a_k = (k * ctx.qr_inv_p) % ctx.p
    return _five_branch(a_k, ctx.M, ctx.m, ctx.p)


def fk_double_diff_general(ctx: FkContext, k: int, first: int, second: int) -> int:
    """Double difference for shifts by any two of p, q, r.

    The value depends only on the residue belonging to the third prime u;
    M and m are the larger and smaller of first^-1, second^-1 modulo u.
    """
    primes = ctx.triple.as_tuple()
    if first == second or first not in primes or second not in primes:
        raise ValueError(f"shifts must be two distinct primes of {ctx.triple}, got {first}, {second}")
    check_window(ctx, k, k - first, k - second, k - first - second)
    (third,) = [u for u in primes if u not in (first, second)]

    residue = (k * mod_inverse(first * second, third)) % third
    inv_first = mod_inverse(first, third)
    inv_second = mod_inverse(second, third)
    return _five_branch(residue, max(inv_first, inv_second), min(inv_first, inv_second), third)


def check_octuple_identity(ctx: FkContext, k: int) -> bool:
    p, q, r = ctx.triple.as_tuple()
    check_window(ctx, k, k - p - q - r)
    left = (
        fk_unchecked(ctx, k)
        + fk_unchecked(ctx, k - p - q)
        + fk_unchecked(ctx, k - q - r)
        + fk_unchecked(ctx, k - r - p)
    )
    right = (
        fk_unchecked(ctx, k - p)
        + fk_unchecked(ctx, k - q)
        + fk_unchecked(ctx, k - r)
        + fk_unchecked(ctx, k - p - q - r)
    )
    return left == right


def check_extreme_residue_bounds(ctx: FkContext, k: int) -> bool:
    # F_k = 0 forces a_k <= floor(k / qr); F_k = 2 forces a_k >= ceil((k + pq + rp) / qr)
    check_window(ctx, k)
    p, q, r = ctx.triple.as_tuple()
    value = fk_unchecked(ctx, k)
    a_k = (k * ctx.qr_inv_p) % p
    if value == 0:
        return a_k <= k // (q * r)
    if value == 2:
        return a_k >= -((-(k + p * q + r * p)) // (q * r))
    return True
