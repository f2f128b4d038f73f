"""Bi-series: zero ideal, recurrence vs closed form vs ranks, cost model."""

import math
from fractions import Fraction

from bilinear_gb.core_algebra import PrimeField, VariableLayout, random_system
from bilinear_gb.hilbert_series import (
    BiSeries,
    binom0,
    cost_model,
    dim_block,
    g_series,
    hs_closed_form,
    hs_direct,
    hs_recurrence,
    hs_zero_ideal,
    speedup_factor,
    univariate_hs,
)

F = PrimeField()


def test_binom0_conventions():
    assert binom0(5, 2) == 10
    assert binom0(0, 0) == 1
    assert binom0(-1, 0) == 1  # empty product stays 1 even off-range
    assert binom0(-1, 1) == 0
    assert binom0(3, 5) == 0


def test_zero_ideal_coefficients():
    hs = hs_zero_ideal(2, 3, 4, 4)
    for a in range(5):
        for b in range(5):
            assert hs[a, b] == math.comb(a + 2, a) * math.comb(b + 3, b)


def test_univariate_zero_ideal():
    hs = hs_zero_ideal(1, 1, 3, 3)
    uni = univariate_hs(hs)
    # degree-2 forms in 4 variables
    assert uni[2] == 10 == math.comb(2 + 3, 3)


def test_first_coefficients_of_quotient():
    for n_x, n_y, m in [(2, 2, 3), (3, 4, 5)]:
        hs = hs_closed_form(n_x, n_y, m, (3, 3))
        for b in range(4):
            assert hs[0, b] == math.comb(b + n_y, b)
        assert hs[1, 1] == (n_x + 1) * (n_y + 1) - m


def test_closed_form_equals_recurrence_small_grid():
    for n_x in range(1, 4):
        for n_y in range(n_x, 4):
            for m in range(1, n_x + n_y + 1):
                a = hs_closed_form(n_x, n_y, m, (5, 5))
                b = hs_recurrence(n_x, n_y, m, (5, 5))
                assert a == b, (n_x, n_y, m)


def test_symmetry_in_block_swap():
    a = hs_closed_form(2, 3, 4, (4, 4))
    b = hs_closed_form(3, 2, 4, (4, 4))
    for i in range(5):
        for j in range(5):
            assert a[i, j] == b[j, i]


def test_g_series_consistency_check_enabled():
    # check=True raises if the closed form ever disagrees with counting
    for i in range(2, 7):
        g_series(3, 3, i, 6, check=True)


def test_direct_ranks_match_closed_form():
    Fs = random_system(VariableLayout(2, 2), 3, seed=5)
    direct = hs_direct(Fs, (4, 4))
    closed = hs_closed_form(2, 2, 3, (4, 4))
    assert direct.skipped == []
    assert direct == closed


def test_direct_respects_column_cap():
    Fs = random_system(VariableLayout(2, 2), 3, seed=5)
    capped = hs_direct(Fs, (4, 4), max_block_cols=30)
    closed = hs_closed_form(2, 2, 3, (4, 4))
    assert capped.skipped  # something was too wide
    for a in range(5):
        for b in range(5):
            if (a, b) not in set(capped.skipped):
                assert capped[a, b] == closed[a, b]


def test_biseries_algebra():
    z = BiSeries.zeros(2, 2)
    a = hs_zero_ideal(1, 1, 2, 2)
    assert a + z == a
    assert a - a == z
    s = a.shift(1, 1)
    assert s[0, 0] == 0 and s[1, 1] == a[0, 0]


def test_dim_block():
    assert dim_block(3, 4, 2, 4) == math.comb(5, 2) * math.comb(8, 4)


def test_speedup_factor_table():
    assert speedup_factor(3, 4, 7, 6) == 29
    assert speedup_factor(3, 4, 7, 7) == 34
    assert speedup_factor(4, 4, 8, 7) == 34
    assert speedup_factor(5, 4, 9, 7) == 32
    assert speedup_factor(5, 5, 10, 6) == 27


def test_cost_model_consistent_with_factor():
    rep = cost_model(3, 4, 7, 6)
    ratio = Fraction(rep["T_hom_units"], rep["T_multihom_units"])
    assert rep["ratio"] == ratio
    assert rep["F"] == math.ceil(ratio)


def test_cost_model_measured_ratio():
    rep = cost_model(2, 2, 4, 5, seed=1)
    assert rep["measured_hom_ops"] > rep["measured_multihom_ops"] > 0
    assert rep["measured_ratio"] > 1
