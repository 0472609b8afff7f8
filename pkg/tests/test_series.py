"""Exact series machinery: tables, inverses, group-ring and bivariate routes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bgrank.partitions import rank_census
from bgrank.series import (
    IntSeries,
    OrthogonalityError,
    StatTable,
    euler_factor_product,
    expand_H_groupring,
    gr_scale_exponents,
    joint_table,
    mobius,
    p2_table,
    p2_values,
    p_table,
    p_values,
    pbar_abn_table,
    pbar_abn_values,
    pbar_eta,
    pbar_table,
    pbar_values,
    ramanujan_sum,
    ranks_with_support,
    series_invert,
    totient,
)

# frozen by hand convolution of p(0..10) = 1,1,2,3,5,7,11,15,22,30,42
P2_HAND = [1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481]


def test_p_values_pentagonal():
    assert p_values(0) == [1]
    pv = p_values(10)
    assert pv[4] == 5 and pv[10] == 42
    assert pv == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_p_values_against_enumeration():
    from bgrank.partitions import enumerate_partitions

    pv = p_values(30)
    for n in range(31):
        assert pv[n] == sum(1 for _ in enumerate_partitions(n))


def test_p2_hand_values():
    assert p2_values(10) == P2_HAND
    pv, p2 = p_values(40), p2_values(40)
    assert all(p2[m] >= pv[m] for m in range(41))


def test_int_series_basic_ops():
    s = IntSeries([1, 2, 3])
    t = IntSeries([1, 0, 0, 5])
    assert (s + t).coeffs == [2, 2, 3]
    assert (s - t).coeffs == [0, 2, 3]
    assert (s * s).coeffs == [1, 4, 10]
    assert IntSeries([7], truncation=3).coeffs == [7, 0, 0, 0]


def test_series_invert_geometric():
    inv = series_invert(IntSeries([1, -1], truncation=9))
    assert inv.coeffs == [1] * 10


def test_series_invert_rejects_non_unit():
    with pytest.raises(ValueError):
        series_invert(IntSeries([2, 1]))


@given(
    st.lists(st.integers(-9, 9), min_size=0, max_size=20),
    st.sampled_from([1, -1]),
)
@settings(max_examples=120)
def test_series_invert_properties(tail, unit):
    s = IntSeries([unit] + tail)
    inv = series_invert(s)
    prod = s * inv
    assert prod.coeffs == [1] + [0] * s.truncation
    assert series_invert(inv) == s


def test_inverse_of_squared_even_product_is_pair_counts():
    s = euler_factor_product(24, step=2, power=2)
    inv = series_invert(s)
    p2 = p2_values(12)
    for m in range(13):
        assert inv[2 * m] == p2[m]
    for m in range(12):
        assert inv[2 * m + 1] == 0


def test_pbar_eta_anchors():
    assert pbar_eta(0, 2) == 2
    assert pbar_eta(0, 4) == 5
    assert pbar_eta(0, 12) == 65
    assert pbar_eta(2, 6) == 1  # the lone staircase (3,2,1)
    assert pbar_eta(2, 8) == 2
    # off-support: parity and minimum size
    assert pbar_eta(0, 3) == 0
    assert pbar_eta(2, 4) == 0
    assert pbar_eta(-2, 9) == 0
    with pytest.raises(ValueError):
        pbar_eta(0, -1)


def test_pbar_matches_enumeration():
    for n in range(15):
        census = rank_census(n)
        by_rank = {}
        for (j, _m), c in census.items():
            by_rank[j] = by_rank.get(j, 0) + c
        for j in range(-3, 4):
            assert pbar_eta(j, n) == by_rank.get(j, 0)


def test_rank_counts_partition_p():
    pv = p_values(40)
    for n in range(41):
        assert sum(pbar_eta(j, n) for j in ranks_with_support(n)) == pv[n]


def test_stat_tables():
    t = p_table(6)
    assert t.kind == "p" and t.values == [1, 1, 2, 3, 5, 7, 11]
    t2 = p2_table(4)
    assert t2[4] == 20
    tb = pbar_table(0, 12)
    assert tb.values[12] == 65 and tb.params == {"j": 0}
    with pytest.raises(ValueError):
        StatTable("p", {}, [1, 2], 5)


# ---------------------------------------------------------------------------
# group-ring route


def test_expand_groupring_examples():
    g = expand_H_groupring(0, 2, 1, 8)
    assert g.coefficient(0) == [1, 0]  # identity
    assert g.coefficient(2) == [0, 2]  # two partitions at rank = 1 mod 2
    with pytest.raises(ValueError):
        expand_H_groupring(0, 2, 0, 8)
    with pytest.raises(ValueError):
        expand_H_groupring(0, 2, 2, 8)


def test_expand_groupring_collapse_matches_pbar():
    for j in (0, 1, 2, -2):
        g = expand_H_groupring(j, 3, 1, 30)
        collapsed = g.eval_at_one()
        want = pbar_values(j, 30)
        assert collapsed.coeffs == want


def test_expand_groupring_exponent_scaling_hom():
    # evaluating at the k-th power equals the exponent-scaling ring map
    for b, k in ((5, 2), (5, 4), (4, 2), (6, 3)):
        direct = expand_H_groupring(0, b, k, 24)
        scaled = expand_H_groupring(0, b, 1, 24).scale_exponents(k)
        assert direct == scaled


def test_gr_scale_exponents_collision():
    # b=4, k=2 folds odd slots together
    assert gr_scale_exponents([0, 3, 0, 5], 2, 4) == [0, 0, 8, 0]


def test_gr_rotate():
    from bgrank.series import gr_rotate

    x = [1, 2, 3, 0, 0]
    assert gr_rotate(x, 0, 5) == x
    assert gr_rotate(x, 1, 5) == [0, 1, 2, 3, 0]
    assert gr_rotate(gr_rotate(x, 3, 5), -3, 5) == x
    assert gr_rotate(x, 5, 5) == x


def test_orthogonality_failure_is_loud(monkeypatch):
    import bgrank.series as series_mod

    series_mod._pbar_abn_cached.cache_clear()
    monkeypatch.setattr(series_mod, "ramanujan_sum", lambda b, r: 1)
    with pytest.raises(OrthogonalityError):
        series_mod.pbar_abn_values(0, 5, 8)
    series_mod._pbar_abn_cached.cache_clear()


def test_mobius_totient_ramanujan():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    # c_b(0) = phi(b); prime b: c_b(r != 0) = -1
    for b in (2, 3, 5, 7):
        assert ramanujan_sum(b, 0) == totient(b)
        assert all(ramanujan_sum(b, r) == -1 for r in range(1, b))
    assert [ramanujan_sum(4, r) for r in range(4)] == [2, 0, -2, 0]
    assert [ramanujan_sum(6, r) for r in range(6)] == [2, 1, -1, -2, -1, 1]


def test_pbar_abn_examples():
    t = pbar_abn_values(0, 2, 4)
    assert (t[0][2], t[1][2]) == (0, 2)
    t5 = pbar_abn_values(0, 5, 4)
    assert [t5[a][4] for a in range(5)] == [1, 1, 1, 1, 1]


def test_pbar_abn_sums_to_pbar():
    for j in (0, 2):
        for b in (2, 3, 4, 5):
            tables = pbar_abn_values(j, b, 30)
            want = pbar_values(j, 30)
            for n in range(31):
                assert sum(tables[a][n] for a in range(b)) == want[n]


def test_pbar_abn_matches_enumeration_including_composite_b(censuses_even_30):
    for n in range(0, 15, 2):
        census = censuses_even_30[n]
        for b in (2, 3, 4, 6):
            tables = pbar_abn_values(0, b, n)
            for a in range(b):
                enum = sum(c for (j, m), c in census.items() if j == 0 and m % b == a)
                assert tables[a][n] == enum


def test_pbar_abn_table_wrapper():
    t = pbar_abn_table(0, 1, 2, 6)
    assert t.kind == "pbar_jab" and t.params == {"j": 0, "a": 1, "b": 2}
    assert t.values[2] == 2
    with pytest.raises(ValueError):
        pbar_abn_table(0, 2, 2, 6)


# ---------------------------------------------------------------------------
# bivariate route


def test_joint_examples():
    biv = joint_table(0, 8)
    assert biv.row(4) == {-2: 1, -1: 1, 0: 1, 1: 1, 2: 1}
    assert biv.row(1) == {}


def test_joint_symmetry_and_collapse():
    for j in (0, 2, -2):
        biv = joint_table(j, 30)
        for n in range(31):
            row = biv.row(n)
            for m, c in row.items():
                assert row.get(-m) == c
            assert biv.row_sum(n) == pbar_eta(j, n)


def test_joint_matches_enumeration():
    for n in range(13):
        census = rank_census(n)
        biv = joint_table(0, n) if n else joint_table(0, 0)
        for m in range(-n, n + 1):
            assert biv.coefficient(m, n) == census.get((0, m), 0)


def test_joint_cap():
    with pytest.raises(ValueError):
        joint_table(0, 61)


def test_dual_route_agreement_to_cap():
    # orthogonality vs bivariate sieve over the whole bivariate range
    for j in (0, 2):
        biv = joint_table(j, 60)
        from bgrank.partitions import bg_core_size

        shift = bg_core_size(j)
        for b in (2, 3, 5):
            tables = pbar_abn_values(j, b, 60)
            for n in range(61):
                if (n - shift) % 2 or n < shift:
                    assert all(tables[a][n] == 0 for a in range(b))
                    continue
                for a in range(b):
                    assert tables[a][n] == biv.row_sum_mod(n, a, b), (j, b, n, a)


def test_triple_route_agreement_small(censuses_even_30):
    from bgrank.partitions import bg_core_size

    for n in range(0, 17, 2):
        census = censuses_even_30[n]
        for j in (0, 2, -2):
            if bg_core_size(j) > n:
                continue
            biv = joint_table(j, n)
            for b in (2, 3, 5):
                tables = pbar_abn_values(j, b, n)
                for a in range(b):
                    enum = sum(c for (jj, m), c in census.items() if jj == j and m % b == a)
                    assert enum == tables[a][n] == biv.row_sum_mod(n, a, b)
