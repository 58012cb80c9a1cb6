import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngit.series import (
    Series,
    equivariant_series_yss,
    intersection_poincare,
    ip_correction,
    poincare_binary_quotient,
    poincare_partial_desing,
    poincare_quotient_odd,
    poincare_stable_quotient,
    strata,
)


def even(*coeffs, trunc=None):
    trunc = 2 * len(coeffs) + 4 if trunc is None else trunc
    return Series.even_polynomial(coeffs, trunc)


def same(series, *coeffs):
    """Coefficient of t^{2j} is coeffs[j] and everything else vanishes."""
    return series == even(*coeffs, trunc=series.trunc)


class TestSeriesArithmetic:
    def test_geometric(self):
        g = Series.geometric(2, 6)
        assert g.coeffs == (1, 0, 1, 0, 1, 0, 1)
        assert (g * Series([1, 0, -1], 6)).coeffs == (1, 0, 0, 0, 0, 0, 0)

    def test_truncation_is_minimum(self):
        assert (Series([1, 1], 3) + Series([1], 5)).trunc == 3
        with pytest.raises(IndexError):
            Series([1], 2)[3]
        with pytest.raises(ValueError):
            Series([1], 2).truncate(5)

    def test_str_and_json(self):
        s = Series([1, 0, -2, 3], 4)
        assert str(s) == "1 - 2*t^2 + 3*t^3 + O(t^5)"
        assert Series.from_json(json.dumps(s.to_json())) == s
        with pytest.raises(ValueError):
            Series.from_json({"coeffs": [1.5]})

    def test_palindromy(self):
        assert even(1, 2, 1).is_palindromic()
        assert not even(1, 2, 2).is_palindromic()


coeff_lists = st.lists(st.integers(-9, 9), min_size=1, max_size=8)


@settings(max_examples=1000)
@given(coeff_lists, coeff_lists, st.integers(1, 4), st.integers(3, 10), st.integers(1, 10))
def test_truncation_coherence(a, b, k, N, extra):
    """Computing at a larger truncation never changes lower coefficients."""

    def expr(M):
        A, B = Series(a, M), Series(b, M)
        return (A * B - A.shift(2)).divide_by_one_minus(k) + B

    low, high = expr(N), expr(N + extra)
    assert high.truncate(N) == low


@settings(max_examples=200)
@given(coeff_lists, st.integers(1, 4), st.integers(2, 12))
def test_geometric_inverts(a, k, N):
    A = Series(a, N)
    one_minus = Series([1] + [0] * (k - 1) + [-1], N)
    assert A.divide_by_one_minus(k) * one_minus == A


class TestGoldenValues:
    def test_equivariant(self):
        assert same(equivariant_series_yss(3), 1, 1, 1)
        assert same(equivariant_series_yss(5), 1, 1, 2, 1, 1)
        assert equivariant_series_yss(4, 20).even_coefficients()[:6] == [1, 1, 2, 1, 1, 0]

    def test_quotient_odd(self):
        assert same(poincare_quotient_odd(3), 1, 1, 1)
        assert same(poincare_quotient_odd(5), 1, 1, 2, 1, 1)
        assert same(poincare_quotient_odd(7), 1, 1, 2, 2, 2, 1, 1)
        with pytest.raises(ValueError):
            poincare_quotient_odd(4)

    def test_partial_desing(self):
        assert same(poincare_partial_desing(4), 1, 2, 2, 1)
        assert same(poincare_partial_desing(6), 1, 2, 3, 3, 2, 1)
        assert same(poincare_partial_desing(8), 1, 2, 3, 4, 4, 3, 2, 1)
        with pytest.raises(ValueError):
            poincare_partial_desing(5)

    def test_intersection(self):
        assert same(intersection_poincare(4), 1, 1, 1, 1)
        assert same(intersection_poincare(6), 1, 1, 2, 2, 1, 1)
        assert same(intersection_poincare(8), 1, 1, 2, 2, 2, 2, 1, 1)
        assert same(ip_correction(6), 0, 1, 1, 1, 1)
        with pytest.raises(ValueError):
            intersection_poincare(3)

    def test_stable_and_binary(self):
        assert same(poincare_stable_quotient(3), 1, 1)
        assert same(poincare_stable_quotient(4), 1, 1)
        assert same(poincare_stable_quotient(7), 1, 1, 1, 1)
        assert same(poincare_binary_quotient(3), 1)
        assert same(poincare_binary_quotient(5), 1, 1, 1)
        with pytest.raises(ValueError):
            poincare_binary_quotient(4)

    def test_truncation_guard(self):
        with pytest.raises(ValueError):
            equivariant_series_yss(5, 8)


class TestStructure:
    @pytest.mark.parametrize("n", range(3, 16, 2))
    def test_consistency(self, n):
        a = equivariant_series_yss(n)
        assert a.truncate(2 * n) == poincare_quotient_odd(n).truncate(2 * n)
        assert not any(a.coeffs[2 * n :])

    @pytest.mark.parametrize("n", range(3, 12, 2))
    def test_bridge(self, n):
        lhs = poincare_quotient_odd(n) - poincare_binary_quotient(n).shift(4)
        assert lhs == poincare_stable_quotient(n)
        assert poincare_binary_quotient(n).degree() == 2 * (n - 3)

    @pytest.mark.parametrize("n", range(3, 17))
    def test_palindromy_and_positivity(self, n):
        s = poincare_quotient_odd(n) if n % 2 else intersection_poincare(n)
        assert s.is_palindromic(2 * (n - 1))
        assert min(s.coeffs) >= 0
        if n % 2 == 0:
            assert min(poincare_partial_desing(n).coeffs) >= 0

    def test_strata_codimensions(self):
        labels = {s.label: s.codimension for s in strata(4)}
        assert labels == {"S(3,0)": 3, "S(4,0)": 4, **{f"S({j},1)": j + 1 for j in range(5)}}
