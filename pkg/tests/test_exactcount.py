from fractions import Fraction
from math import factorial

import pytest

from parkgraph.enumgen import brute_C_profile, brute_F_profile, brute_M_profile
from parkgraph.errors import DomainError, SizeError
from parkgraph.exactcount import (
    classic_P,
    coefficient_count,
    exact_C_n,
    exact_F_n,
    exact_F_nm,
    exact_M_n,
    exact_M_nm,
    falling_factorial,
    forest_crosscheck,
    gen_binomial,
    recurrence_C_n,
    recurrence_F_n,
    series_C,
    series_F,
    series_M,
    series_Q_bivariate,
    series_tree_T,
)
from parkgraph.series import Series


def test_golden_values():
    assert [exact_F_n(n) for n in (1, 2, 3)] == [1, 6, 132]
    assert [exact_M_n(n) for n in (1, 2, 3)] == [1, 12, 396]
    assert exact_C_n(2) == 10


def test_elementary():
    assert falling_factorial(5, 2) == 20 and falling_factorial(3, 0) == 1
    assert gen_binomial(-2, 2) == 3 and gen_binomial(1, 3) == 0
    assert classic_P(3, 3) == 16 and classic_P(4, 0) == 1
    with pytest.raises(DomainError):
        exact_M_nm(3, 4)


@pytest.mark.parametrize("n", range(1, 5))
def test_closed_forms_vs_brute(n):
    fp, mp, cp = brute_F_profile(n), brute_M_profile(n), brute_C_profile(n)
    for m in range(n + 1):
        assert fp[m] == exact_F_nm(n, m)
        assert mp[m] == exact_M_nm(n, m)
    assert cp[n] == exact_C_n(n)
    assert exact_M_n(n) == exact_M_nm(n, n)


def test_edge_values():
    for n in range(1, 12):
        assert exact_M_nm(n, 0) == n ** n
        assert exact_F_nm(n, 0) == n ** (n - 1)
        assert exact_M_nm(n, 1) == n ** (n + 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_recurrences(n):
    assert recurrence_F_n(n) == exact_F_n(n)
    assert recurrence_C_n(n) == exact_C_n(n)


def test_recurrence_cap():
    with pytest.raises(SizeError):
        recurrence_F_n(10)


def test_tree_function():
    t = series_tree_T(8)
    assert [t.coeff(n) * factorial(n) for n in range(1, 9)] == [n ** (n - 1) for n in range(1, 9)]


def test_univariate_series():
    order = 15
    F, C, M = series_F(order), series_C(order), series_M(order)
    for n in range(1, order + 1):
        assert coefficient_count(F, n) == exact_F_n(n)
        assert coefficient_count(C, n) == exact_C_n(n)
        assert coefficient_count(M, n) == exact_M_n(n)
    assert C.exp() == M
    assert 1 + F.derivative().shift(1) == M


def test_bivariate_series():
    gf = series_Q_bivariate(9)
    for n in range(1, 9):
        for m in range(n + 1):
            assert gf.count("M", n, m) == exact_M_nm(n, m)
            assert gf.count("F", n, m) == exact_F_nm(n, m)
    cp = brute_C_profile(4)
    assert [gf.count("C", 4, m) for m in range(5)] == cp


def test_series_order_cap():
    with pytest.raises(SizeError):
        series_Q_bivariate(100)


@pytest.mark.parametrize("n,m", [(5, 3), (6, 0), (7, 4), (9, 8)])
def test_forest_identity(n, m):
    assert forest_crosscheck(n, m) == exact_M_nm(n, m)


def test_forest_needs_free_node():
    with pytest.raises(DomainError):
        forest_crosscheck(4, 4)


def test_series_arithmetic():
    z = Series.z(6)
    geo = (1 - z).reciprocal()
    assert geo.scalars() == [1] * 7
    assert ((1 - z) * geo).scalars() == [1, 0, 0, 0, 0, 0, 0]
    assert z.exp().log() == z
    assert geo.compose(z * 2).coeff(3) == 8
    assert z.integral().coeff(2) == Fraction(1, 2)
