import math
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapshift.core import ShiftParams
from gapshift.enumeration import (BudgetExceeded, arrangements_P, bicolored_count, block_dp,
                                  closed_form_count, closed_form_strata, color_walks, compositions,
                                  count_automaton, count_brute, count_dp, count_series, count_table,
                                  entropy_estimate, entropy_series, enumerate_brute,
                                  gap_placements_Q, one_color_count, truncated_count_RL,
                                  weak_compositions)
from gapshift.language import is_admissible
from strategies import params_st

P212 = ShiftParams.make(2, 1, 2)


def test_small_examples():
    assert enumerate_brute(0, P212) == [()]
    assert enumerate_brute(1, P212) == [(0,), (1,), (2,), (3,), (4,)]
    assert len(enumerate_brute(2, P212)) == 17
    assert count_dp(2, P212) == 17
    assert bicolored_count(4, P212) == 8
    # shortest bicoloured word is c 0^2 c'
    assert bicolored_count(3, P212) == 0


def test_pruned_brute_matches_filter():
    for n in range(6):
        assert enumerate_brute(n, P212) == enumerate_brute(n, P212, prune=False)


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_brute(12, P212, prune=False, budget=1000)
    with pytest.raises(BudgetExceeded):
        count_brute(12, P212, budget=1000)


@pytest.mark.parametrize("nu,tau,L", [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2), (2, 1, 1),
                                      (2, "1/3", 3), (3, 0, 2), (2, "5/2", 4)])
def test_routes_agree(nu, tau, L):
    p = ShiftParams.make(nu, tau, L)
    series = count_series(9, p)
    for n in range(9):
        brute = len(enumerate_brute(n, p)) if n <= 6 else count_brute(n, p)
        assert series.total[n] == brute == count_automaton(n, p) == closed_form_count(n, p)
        assert series.total[n] == series.zeros[n] + series.single[n] + series.multi[n]


@pytest.mark.parametrize("nu,tau,L", [(2, 1, 2), (2, "3/2", 3), (3, 2, 2)])
def test_strata_equal(nu, tau, L):
    p = ShiftParams.make(nu, tau, L)
    for n in range(13):
        auto = count_automaton(n, p, stratify=True)
        cf = closed_form_strata(n, p)
        assert {k: v for k, v in auto.items() if v} == cf
        assert sum(cf.values()) == count_dp(n, p)


def test_brute_strata():
    # (ell, k) counts by explicit enumeration for one setting
    p = ShiftParams.make(2, "1/2", 3)
    for n in range(6):
        got = {}
        for w in enumerate_brute(n, p):
            ell = sum(1 for s in w if s)
            k = sum(1 for i, s in enumerate(w) if s and (i == 0 or p.color(w[i - 1]) != p.color(s)))
            got[(ell, k)] = got.get((ell, k), 0) + 1
        assert got == closed_form_strata(n, p)


def test_P_Q_examples():
    assert arrangements_P(2, 3) == 2
    assert all(arrangements_P(1, ell) == 1 for ell in range(1, 10))
    assert gap_placements_Q(1, 0) == 1
    assert gap_placements_Q(2, 3) == 10
    with pytest.raises(ValueError):
        arrangements_P(3, 2)
    with pytest.raises(ValueError):
        gap_placements_Q(0, 1)


@given(st.integers(1, 8), st.integers(0, 8))
def test_P_Q_against_enumerators(k, m):
    ell = k + m
    assert arrangements_P(k, ell) == comb(ell - 1, k - 1) == sum(1 for _ in compositions(ell, k))
    assert gap_placements_Q(k, m) == comb(m + k, k) == sum(1 for _ in weak_compositions(m, k + 1))


def test_color_walks():
    # k blocks on a path of L colours, consecutive colours adjacent
    assert color_walks(1, 3) == 3
    assert color_walks(2, 3) == 4
    assert color_walks(3, 3) == 6
    assert color_walks(2, 1) == 0


def test_one_color():
    p = ShiftParams.make(3, 1, 1)
    for n in range(10):
        assert count_dp(n, p) == one_color_count(n, p) + 1


@given(params_st, st.integers(0, 25))
def test_lower_bound(p, n):
    c = count_dp(n, p)
    floor = p.num_colors * p.nu ** n if n else 1
    assert c >= floor
    if p.num_colors >= 2 and n >= 1:
        assert c > floor


@pytest.mark.parametrize("nu,L", [(2, 2), (3, 3)])
def test_monotone_in_tau_and_L(nu, L):
    for n in range(0, 30, 3):
        taus = ["0", "1/2", "1", "3/2", "3"]
        vals = [count_dp(n, ShiftParams.make(nu, t, L)) for t in taus]
        assert vals == sorted(vals, reverse=True)
        by_L = [count_dp(n, ShiftParams.make(nu, 1, l)) for l in range(1, 5)]
        assert by_L == sorted(by_L)


def test_weighted_dp_matches_brute():
    p = ShiftParams.make(2, "3/2", 3)
    bw = lambda a: 0.7 ** a + 0.1 * a
    z = 0.55
    series = block_dp(9, p, bw, zero_weight=z, zero=0.0)
    from gapshift.core import decompose
    for n in range(10):
        total = 0.0
        for w in enumerate_brute(n, p):
            wt = 1.0
            for seg in decompose(w, p).segments:
                if hasattr(seg, "color"):
                    wt *= bw(seg.length) / p.nu ** seg.length
                else:
                    wt *= z ** seg.length
            total += wt
        assert math.isclose(series.total[n], total, rel_tol=1e-12)


def test_truncations():
    p = ShiftParams.make(2, 2, 2)
    vals = [truncated_count_RL(12, L, p) for L in range(1, 6)]
    assert vals == sorted(vals)
    assert vals[0] == count_dp(12, p.with_colors(1))
    fc = [truncated_count_RL(5, L, p, first_coordinate=True) for L in range(1, 4)]
    assert fc == sorted(fc)
    assert all(f >= v for f, v in zip(fc, [truncated_count_RL(5, L, p) for L in range(1, 4)]))


def test_entropy_estimates():
    p = ShiftParams.make(2, 2, 2)
    est = entropy_estimate(500, p)
    assert math.log(2) <= est.rate <= math.log(2) + 0.05
    small = entropy_estimate(500, ShiftParams.make(2, "1/4", 2))
    assert small.rate > math.log(2) + 0.1
    series = entropy_series([50, 100, 200], p)
    assert [e.n for e in series] == [50, 100, 200]
    assert all(e.rate >= e.lower_bound for e in series)
    with pytest.raises(ValueError):
        entropy_estimate(0, p)


def test_count_table():
    t = count_table(5, P212, stratify=True)
    assert t[2] == 17
    assert sum(t.strata[4].values()) == t[4]
    assert list(t.rows())[0] == (0, 1)


def test_big_n_is_exact_int():
    c = count_dp(300, P212)
    assert isinstance(c, int) and c > 2 * 2 ** 300
