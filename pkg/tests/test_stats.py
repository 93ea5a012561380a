from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from common.arith import primes_in
from common.errors import IndexOutOfRangeError, InputError, NonPositiveThresholdError
from common.models import SweepRow
from common.stats import (
    antidiagonal_sum,
    antidiagonal_table,
    closed_form_S,
    density_lower_bound,
    grid_average,
    grid_density,
    residue_grid,
    stronger_count,
    sweep_density,
)


def test_grid_for_7():
    grid = residue_grid(7)
    assert grid.values.shape == (6, 6)
    # symmetric in (i, j), and i <-> p - i leaves the bound unchanged
    assert (grid.values == grid.values.T).all()
    assert grid.at(1, 1) == grid.at(6, 6) == grid.at(1, 6)
    assert grid.at(1, 1) == 3
    with pytest.raises(IndexOutOfRangeError):
        grid.at(0, 3)
    assert len(grid.rows()) == 36


def test_grid_7_statistics():
    assert stronger_count(7) == 4
    assert grid_average(7) <= 4


@pytest.mark.parametrize("p", primes_in(3, 500))
def test_stronger_count_and_average(p):
    assert stronger_count(p) == (p - 3) * (p - 5) // 2
    assert grid_average(p) <= Fraction(p + 1, 2)


@pytest.mark.parametrize("p", [9, 15, 1, 2])
def test_grid_rejects_non_odd_primes(p):
    with pytest.raises(InputError):
        residue_grid(p)


def test_closed_form_pieces():
    assert closed_form_S(Fraction(1, 3)) == Fraction(1, 54)
    assert closed_form_S(Fraction(1, 2)) == Fraction(1, 24)
    assert closed_form_S(Fraction(2, 3)) == Fraction(25, 216)
    assert closed_form_S(Fraction(3, 4)) == Fraction(1, 8)
    assert closed_form_S(Fraction(5, 4)) == Fraction(1, 8)
    assert density_lower_bound(Fraction(2, 3)) == Fraction(25, 27)


def test_closed_form_rejects_non_positive():
    with pytest.raises(NonPositiveThresholdError):
        closed_form_S(Fraction(0))
    with pytest.raises(NonPositiveThresholdError):
        grid_density(7, Fraction(-1, 2))


def test_density_approaches_closed_form():
    target = float(Fraction(25, 27))
    near = grid_density(199, Fraction(2, 3))
    assert abs(float(near.empirical_fraction) - target) < 0.05
    nearer = grid_density(499, Fraction(2, 3))
    assert abs(float(nearer.empirical_fraction) - target) < 0.02
    assert nearer.to_dict()["closed_form_lower"] == "25/27"


def test_antidiagonal_sums():
    table = antidiagonal_table(11)
    assert [row.k for row in table] == list(range(0, 6))
    assert table[0].total == 0
    for row in table:
        assert row.discrepancy == row.total - row.claimed
    with pytest.raises(IndexOutOfRangeError):
        antidiagonal_sum(11, 6)


def _row(p, a):
    return SweepRow(
        p=p, q=0, r=0, deg=0, alpha=0, beta=0, beta_star=0, a_plus=0, a_minus=0, a=a,
        max_jump=0, bound_new=0, bound_bachman=0, bound_beiter=0, bound_bang=0, tight_flag=False,
    )


def test_sweep_density():
    rows = [_row(3, 2), _row(5, 3), _row(7, 4), _row(7, 5)]
    # A < 2p/3: 2 < 2, 3 < 10/3, 4 < 14/3, 5 < 14/3
    assert sweep_density(rows, Fraction(2, 3)) == Fraction(2, 4)
    assert sweep_density([], Fraction(2, 3)) == 0


@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(2)), st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(2)))
def test_closed_form_is_monotone_and_bounded(c1, c2):
    low, high = sorted((c1, c2))
    assert 0 < closed_form_S(low) <= closed_form_S(high) <= Fraction(1, 8)


@settings(max_examples=50)
@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(3, 2)))
def test_grid_density_is_exact(c):
    summary = grid_density(13, c)
    grid = residue_grid(13)
    below = sum(1 for value in grid.values.ravel().tolist() if Fraction(value) < c * 13)
    assert summary.empirical_fraction == Fraction(below, 144)


@pytest.mark.parametrize("p", [3, 5, 7, 13, 23, 47, 97])
def test_grid_entries_and_reflection(p):
    grid = residue_grid(p)
    assert grid.values.min() >= 1
    assert grid.values.max() <= p - 1
    assert (grid.values == grid.values.T).all()
    # row i-1 -> p-i-1 and column j-1 -> p-j-1 is a flip of both axes
    assert (grid.values == grid.values[::-1, ::-1]).all()


@pytest.mark.parametrize("c", [Fraction(1), Fraction(3, 2), Fraction(7)])
def test_density_is_one_from_c_equal_one(c):
    for p in (5, 23, 97):
        assert grid_density(p, c).empirical_fraction == 1


@pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)])
def test_density_error_shrinks_with_p(c):
    limit = density_lower_bound(c)
    coarse = abs(grid_density(23, c).empirical_fraction - limit)
    fine = abs(grid_density(199, c).empirical_fraction - limit)
    assert fine < coarse
