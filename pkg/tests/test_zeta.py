import math
from fractions import Fraction

import pytest

from app.core.exceptions import OutOfRangeError
from app.witness import add, make_algebraic, mul
from app.zeta import (
    zeta_closed_algebraic,
    zeta_grid,
    zeta_sum_bound,
    zeta_truncated,
    zeta_upper_bound,
)

SLACK = 1 + 1e-10


def test_algebraic_series_matches_closed_form():
    z = zeta_truncated(make_algebraic(Fraction(3, 2)), 0.5, 40)
    assert z.series_value == pytest.approx(2.0, abs=1e-6)
    assert z.power_bounds == [1] * 40
    assert z.tail_bound == pytest.approx(0.5 ** 40)
    assert zeta_closed_algebraic(0.5) == 2.0
    assert zeta_closed_algebraic(0.0) == 1.0
    assert zeta_closed_algebraic(0.9) == pytest.approx(10.0)


def test_zero_witness():
    z = zeta_truncated(make_algebraic(0), 0.7, 10)
    assert z.series_value == 1.0
    assert z.closed_bound == 1.0
    assert z.tail_bound == 0.0


def test_pi_series(pi):
    z = zeta_truncated(pi, 0.5, 32)
    assert z.power_bounds[:6] == [2, 3, 5, 6, 8, 9]
    assert z.series_value <= math.exp(2) * SLACK
    assert z.closed_bound == pytest.approx(math.exp(2))
    assert z.M == 32 and z.t == 0.5
    assert "upper bound" in z.surrogate


def test_series_grows_with_terms(pi):
    values = [zeta_truncated(pi, 0.6, m).series_value for m in (1, 4, 16, 64)]
    assert values == sorted(values)


def test_upper_bounds(pi, log2):
    assert zeta_upper_bound(pi, 0.5) == pytest.approx(math.exp(2))
    assert zeta_upper_bound(make_algebraic(3), 0.5) == pytest.approx(math.e)
    assert zeta_upper_bound(pi, 0.0) == 1.0
    assert zeta_sum_bound(pi, log2, 0.5) == pytest.approx(math.exp(2))
    assert zeta_sum_bound(make_algebraic(1), pi, 0.5) == pytest.approx(math.exp(2))


@pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
def test_product_and_sum_bounds(gallery, t):
    witnesses = [w for _, w in gallery][:6]
    single = [zeta_truncated(w, t).series_value for w in witnesses]
    for i, w1 in enumerate(witnesses):
        assert single[i] <= zeta_upper_bound(w1, t) * SLACK
        for j, w2 in enumerate(witnesses[i:], start=i):
            assert zeta_truncated(mul(w1, w2), t).series_value <= single[i] * single[j] * SLACK
            assert zeta_truncated(add(w1, w2), t).series_value <= zeta_sum_bound(w1, w2, t) * SLACK


@pytest.mark.parametrize("t", [-0.1, 1.0, 1.5])
def test_t_out_of_range(pi, t):
    with pytest.raises(OutOfRangeError):
        zeta_truncated(pi, t)
    with pytest.raises(OutOfRangeError):
        zeta_upper_bound(pi, t)


def test_terms_out_of_range(pi):
    with pytest.raises(OutOfRangeError):
        zeta_truncated(pi, 0.5, 0)


def test_grid(pi):
    grid = zeta_grid(pi, [0.1, 0.2, 0.3], 8)
    assert [z.t for z in grid] == [0.1, 0.2, 0.3]
    assert all(z.M == 8 for z in grid)
