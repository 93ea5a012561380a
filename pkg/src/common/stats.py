#
# stats.py
# statistics over the residue grid: entry (i, j) is the bound
# min{2 alpha + beta*, p - beta*} for a triple with q' = i and r' = j (mod p)
#
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple

import numpy as np

from common.arith import is_prime
from common.errors import (
    BoundViolationError,
    IndexOutOfRangeError,
    InputError,
    NonPositiveThresholdError,
)
from common.models import DensitySummary, SweepRow

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ResidueGrid:
    p: int
    values: np.ndarray  # (p-1) x (p-1), row i-1 / column j-1

    def at(self, i: int, j: int) -> int:
        if not (1 <= i < self.p and 1 <= j < self.p):
            raise IndexOutOfRangeError(f"grid index ({i}, {j}) outside 1..{self.p - 1}")
        return int(self.values[i - 1, j - 1])

    def total(self) -> int:
        return int(self.values.sum(dtype=np.int64))

    def rows(self) -> List[dict]:
        return [
            {"i": i + 1, "j": j + 1, "a": int(value)}
            for (i, j), value in np.ndenumerate(self.values)
        ]


def _check_p(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise InputError(f"p must be an odd prime >= 3, got {p}")


def _grid_parameters(p: int):
    # alpha and beta* for every pair of inverse residues (i, j)
    i, j = np.meshgrid(np.arange(1, p, dtype=np.int64), np.arange(1, p, dtype=np.int64), indexing="ij")
    small = np.minimum(i, j)
    large = np.maximum(i, j)
    alpha = np.minimum(small, p - large)
    beta = np.where(large + small <= p, large, p - small)
    beta_star = np.minimum(beta, p - beta)
    return alpha, beta_star


def residue_grid(p: int) -> ResidueGrid:
    _check_p(p)
    alpha, beta_star = _grid_parameters(p)
    values = np.minimum(2 * alpha + beta_star, p - beta_star)
    return ResidueGrid(p=p, values=values)


def grid_average(p: int) -> Fraction:
    grid = residue_grid(p)
    average = Fraction(grid.total(), (p - 1) ** 2)
    if average > Fraction(p + 1, 2):
        raise BoundViolationError(f"p={p}: grid average {average} exceeds (p+1)/2")
    return average


def antidiagonal_sum(p: int, k: int) -> int:
    """Sum of a(i, i + (p-1)/2 - k) over i = 1..k.

    Compared with (p+1)k/2; a mismatch is logged, not raised.
    """
    _check_p(p)
    half = (p - 1) // 2
    if not (0 <= k <= half):
        raise IndexOutOfRangeError(f"k={k} outside [0, {half}] for p={p}")
    grid = residue_grid(p)
    total = sum(grid.at(i, i + half - k) for i in range(1, k + 1))
    claimed = Fraction((p + 1) * k, 2)
    if total != claimed:
        logger.warning(f"p={p}, k={k}: antidiagonal sum {total} differs from (p+1)k/2 = {claimed}")
    return total


class AntidiagonalRow(NamedTuple):
    k: int
    total: int
    claimed: Fraction
    discrepancy: Fraction


def antidiagonal_table(p: int) -> List[AntidiagonalRow]:
    table = []
    for k in range(0, (p - 1) // 2 + 1):
        total = antidiagonal_sum(p, k)
        claimed = Fraction((p + 1) * k, 2)
        table.append(AntidiagonalRow(k=k, total=total, claimed=claimed, discrepancy=total - claimed))
    return table


def _check_threshold(c: Fraction) -> Fraction:
    c = Fraction(c)
    if c <= 0:
        raise NonPositiveThresholdError(f"threshold must be positive, got {c}")
    return c


def closed_form_S(c: Fraction) -> Fraction:
    """Area of {0 < x < y < 1/2, min{2x + y, 1 - y} < c}."""
    c = _check_threshold(c)
    if c < Fraction(1, 2):
        return c * c / 6
    if c < Fraction(3, 4):
        return Fraction(1, 8) - (3 - 4 * c) ** 2 / 12
    return Fraction(1, 8)


def density_lower_bound(c: Fraction) -> Fraction:
    # the triangle 0 < x < y < 1/2 has area 1/8
    return 8 * closed_form_S(c)


def grid_density(p: int, c: Fraction) -> DensitySummary:
    c = _check_threshold(c)
    grid = residue_grid(p)
    # for integer a: a < c*p  <=>  a < ceil(c*p), exact for any denominator
    below = int(np.count_nonzero(grid.values < math.ceil(c * p)))
    return DensitySummary(
        p=p,
        c=c,
        empirical_fraction=Fraction(below, (p - 1) ** 2),
        closed_form_lower=density_lower_bound(c),
    )


def stronger_count(p: int) -> int:
    """Pairs where min{2a+b*, p-b*} beats Bachman's min{(p-1)/2 + a, p-b*}."""
    _check_p(p)
    alpha, beta_star = _grid_parameters(p)
    count = int(np.count_nonzero(alpha + beta_star < (p - 1) // 2))
    expected = (p - 3) * (p - 5) // 2
    if count != expected:
        raise BoundViolationError(f"p={p}: {count} strictly stronger pairs, expected (p-3)(p-5)/2 = {expected}")
    return count


def sweep_density(rows: Iterable[SweepRow], c: Fraction) -> Fraction:
    """Share of swept triples with exact A < c*p; reported, never asserted."""
    c = _check_threshold(c)
    rows = list(rows)
    if not rows:
        return Fraction(0)
    below = sum(1 for row in rows if row.a < math.ceil(c * row.p))
    return Fraction(below, len(rows))
