#
# bounds.py
# every bound on A = max{A+, -A-} we compare against, the case table of
# the four-tuples (F_k, F_{k-q}, F_{k-r}, F_{k-q-r}) and the case counts
#
from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, FrozenSet, NamedTuple, Optional, Tuple

from common.coeffs import CoefficientVector, coefficient_at, extrema
from common.errors import (
    BoundViolationError,
    IndexOutOfRangeError,
    RequiresPGreaterThan3Error,
)
from common.fkseq import FkContext, check_window, fk_unchecked
from common.models import BoundReport

logger = logging.getLogger(__name__)


class CaseLabel(Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3A = "case3a"
    CASE3B = "case3b"
    CASE4 = "case4"
    NONE = "none"


# contribution of each case to N0(F_k, F_{k-q-r}) - N0(F_{k-q}, F_{k-r})
_CASE_TABLE: Dict[Tuple[int, int, int, int], CaseLabel] = {
    (0, 0, 1, 0): CaseLabel.CASE1,
    (0, 1, 0, 0): CaseLabel.CASE1,
    (0, 1, 1, 1): CaseLabel.CASE1,
    (1, 1, 1, 0): CaseLabel.CASE1,
    (0, 0, 0, 1): CaseLabel.CASE2,
    (1, 0, 0, 0): CaseLabel.CASE2,
    (1, 0, 1, 1): CaseLabel.CASE2,
    (1, 1, 0, 1): CaseLabel.CASE2,
    (0, 1, 1, 2): CaseLabel.CASE3A,
    (2, 1, 1, 0): CaseLabel.CASE3B,
    (1, 0, 2, 1): CaseLabel.CASE4,
    (1, 2, 0, 1): CaseLabel.CASE4,
}


class MBounds(NamedTuple):
    plus_bound: int
    minus_bound: int


def bound_theorem_M(ctx: FkContext) -> MBounds:
    alpha, beta, p = ctx.alpha, ctx.beta, ctx.p
    return MBounds(
        plus_bound=min(2 * alpha + beta, p - beta),
        minus_bound=min(p + 2 * alpha - beta, beta),
    )


def bound_theorem_A(ctx: FkContext) -> int:
    alpha, beta_star, p = ctx.alpha, ctx.beta_star, ctx.p
    bound = min(2 * alpha + beta_star, p - beta_star)

    # the same bound, reached by combining the two one-sided bounds
    combined = max(bound_theorem_M(ctx))
    if combined != bound:
        raise BoundViolationError(
            f"{ctx.triple}: max of one-sided bounds {combined} differs from min{{2a+b*, p-b*}} = {bound}"
        )
    return bound


def bound_bachman(ctx: FkContext) -> int:
    return min((ctx.p - 1) // 2 + ctx.alpha, ctx.p - ctx.beta_star)


def classic_bounds(p: int) -> Tuple[int, int]:
    """(Bang, Beiter): (p - 1, p - floor(p/4))."""
    return p - 1, p - p // 4


def is_strictly_stronger(ctx: FkContext) -> bool:
    stronger = ctx.alpha + ctx.beta_star < (ctx.p - 1) // 2
    if stronger != (bound_theorem_A(ctx) < bound_bachman(ctx)):
        raise BoundViolationError(
            f"{ctx.triple}: alpha + beta* criterion disagrees with the bound comparison"
        )
    return stronger


def classify_quadruple(quadruple: Tuple[int, int, int, int]) -> CaseLabel:
    return _CASE_TABLE.get(tuple(quadruple), CaseLabel.NONE)


def classify_case(ctx: FkContext, k: int) -> CaseLabel:
    q, r = ctx.q, ctx.r
    check_window(ctx, k, k - q, k - r, k - q - r)
    return classify_quadruple((
        fk_unchecked(ctx, k),
        fk_unchecked(ctx, k - q),
        fk_unchecked(ctx, k - r),
        fk_unchecked(ctx, k - q - r),
    ))


class CaseCounts(NamedTuple):
    c1: int
    c2: int
    c3a: int
    c3b: int
    c4: int
    gamma: int

    @property
    def reconstructed(self) -> int:
        return (self.c1 + self.c3a + self.c3b) - (self.c2 + self.c4)


def _violation(ctx: FkContext, n: int, what: str) -> BoundViolationError:
    return BoundViolationError(f"{ctx.triple}, n={n}: {what}")


def case_counts(ctx: FkContext, n: int, coefficient: Optional[int] = None) -> CaseCounts:
    """Count the cases over k = n-p+1 .. n and check every count bound.

    `coefficient` is a(n) when the caller already has it; otherwise it is
    evaluated through coefficient_at.
    """
    deg = ctx.triple.degree
    if not (0 <= n <= deg):
        raise IndexOutOfRangeError(f"n={n} outside [0, {deg}] for {ctx.triple}")

    p, q, r = ctx.triple.as_tuple()
    alpha, beta, M, m = ctx.alpha, ctx.beta, ctx.M, ctx.m
    gamma = n // (q * r) + 1

    tally = {label: 0 for label in CaseLabel}
    for k in range(n - p + 1, n + 1):
        tally[classify_case(ctx, k)] += 1

    counts = CaseCounts(
        c1=tally[CaseLabel.CASE1],
        c2=tally[CaseLabel.CASE2],
        c3a=tally[CaseLabel.CASE3A],
        c3b=tally[CaseLabel.CASE3B],
        c4=tally[CaseLabel.CASE4],
        gamma=gamma,
    )

    if counts.c1 > alpha:
        raise _violation(ctx, n, f"C1 = {counts.c1} > alpha = {alpha}")
    if counts.c2 > alpha:
        raise _violation(ctx, n, f"C2 = {counts.c2} > alpha = {alpha}")
    c3_bound = min(alpha + beta, p - alpha - beta)
    if counts.c3a + counts.c3b > c3_bound:
        raise _violation(ctx, n, f"C3 = {counts.c3a + counts.c3b} > {c3_bound}")
    c4_bound = min(beta - alpha, p + alpha - beta)
    if counts.c4 > c4_bound:
        raise _violation(ctx, n, f"C4 = {counts.c4} > {c4_bound}")

    # 3a needs M + m > p, 3b needs M + m < p; the gamma intervals sharpen both
    if M + m <= p and counts.c3a:
        raise _violation(ctx, n, f"C3a = {counts.c3a} but M + m <= p")
    if M + m >= p and counts.c3b:
        raise _violation(ctx, n, f"C3b = {counts.c3b} but M + m >= p")
    c3a_interval = max(0, min(gamma, M + m - p) - max(gamma + M + m - 2 * p, 0))
    if counts.c3a > c3a_interval:
        raise _violation(ctx, n, f"C3a = {counts.c3a} > interval length {c3a_interval}")
    c3b_interval = max(0, min(p, gamma + M + m) - max(gamma, M + m))
    if counts.c3b > c3b_interval:
        raise _violation(ctx, n, f"C3b = {counts.c3b} > interval length {c3b_interval}")

    if coefficient is None:
        coefficient = coefficient_at(ctx, n)
    if coefficient > counts.c1 + counts.c3a + counts.c3b:
        raise _violation(ctx, n, f"a(n) = {coefficient} > C1 + C3")
    if -coefficient > counts.c2 + counts.c4:
        raise _violation(ctx, n, f"-a(n) = {-coefficient} > C2 + C4")
    if coefficient != counts.reconstructed:
        raise _violation(ctx, n, f"a(n) = {coefficient} but the case table gives {counts.reconstructed}")
    return counts


def corollary_s_residues(p: int) -> FrozenSet[int]:
    """{+-1, +-a, +-b, +-c, +-d} mod p for p = 2a+1 = 3b+-1 = 4c+-1 = 6d+-1."""
    if p <= 3:
        raise RequiresPGreaterThan3Error(f"the residue classes need p > 3, got p = {p}")
    a = (p - 1) // 2
    b = (p + 1) // 3 if p % 3 == 2 else (p - 1) // 3
    c = (p + 1) // 4 if p % 4 == 3 else (p - 1) // 4
    d = (p + 1) // 6 if p % 6 == 5 else (p - 1) // 6
    return frozenset(x % p for base in (1, a, b, c, d) for x in (base, -base))


def corollary_s_class(ctx: FkContext) -> Optional[int]:
    """Height guarantee for q, r in the special residue classes, else None."""
    p = ctx.p
    residues = corollary_s_residues(p)
    q_class, r_class = ctx.q % p, ctx.r % p
    if q_class not in residues or r_class not in residues:
        return None

    unit = {1, p - 1}
    guarantee = 3 if q_class in unit and r_class in unit else 18
    bound = bound_theorem_A(ctx)
    if 2 * ctx.alpha + ctx.beta_star > guarantee or bound > guarantee:
        raise BoundViolationError(
            f"{ctx.triple}: class guarantee {guarantee} below 2a+b* = {2 * ctx.alpha + ctx.beta_star}"
        )
    return guarantee


def bound_report(ctx: FkContext, vector: Optional[CoefficientVector] = None) -> BoundReport:
    p, q, r = ctx.triple.as_tuple()
    plus_bound, minus_bound = bound_theorem_M(ctx)
    bang, beiter = classic_bounds(p)
    report = BoundReport(
        p=p, q=q, r=r,
        alpha=ctx.alpha,
        beta=ctx.beta,
        beta_star=ctx.beta_star,
        bound_a_plus=plus_bound,
        bound_a_minus=minus_bound,
        bound_new=bound_theorem_A(ctx),
        bound_bachman=bound_bachman(ctx),
        bound_beiter=beiter,
        bound_bang=bang,
    )
    if report.bound_new > report.bound_bachman:
        raise BoundViolationError(f"{ctx.triple}: new bound {report.bound_new} > Bachman {report.bound_bachman}")
    if report.bound_bachman > report.bound_bang:
        raise BoundViolationError(f"{ctx.triple}: Bachman {report.bound_bachman} > Bang {report.bound_bang}")
    if p >= 5 and beiter > bang:
        raise BoundViolationError(f"{ctx.triple}: Beiter {beiter} > Bang {bang}")
    if p == 3 and beiter > bang:
        logger.debug(f"{ctx.triple}: Beiter value {beiter} exceeds Bang {bang} at p = 3, reported only")

    if vector is not None:
        summary = extrema(vector)
        report.exact_a_plus = summary.a_plus
        report.exact_a_minus = summary.a_minus
        report.exact_a = summary.height
        if summary.a_plus > plus_bound:
            raise BoundViolationError(f"{ctx.triple}: A+ = {summary.a_plus} > {plus_bound}")
        if -summary.a_minus > minus_bound:
            raise BoundViolationError(f"{ctx.triple}: -A- = {-summary.a_minus} > {minus_bound}")
        if summary.height > report.bound_new:
            raise BoundViolationError(f"{ctx.triple}: A = {summary.height} > {report.bound_new}")
    return report
