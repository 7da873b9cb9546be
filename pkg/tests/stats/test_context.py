"""
Unit tests for the Fisher exact test, Tarone's bound and the threshold condition.

Exact values come from a rational hypergeometric oracle built on
``fractions.Fraction`` and ``math.comb``.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from patternpype.dataset import PatternSupport
from patternpype.exceptions import StatisticsError
from patternpype.stats import (
    StatContext,
    corrected_threshold,
    fisher_p,
    lamp_condition_holds,
    log_binomial,
    tarone_bound,
)


def exact_fisher(n_total: int, n_positive: int, x: int, n: int) -> Fraction:
    n_negative = n_total - n_positive
    terms = sum(
        math.comb(n_positive, k) * math.comb(n_negative, x - k)
        for k in range(n, min(x, n_positive) + 1)
        if x - k <= n_negative
    )
    return Fraction(terms, math.comb(n_total, x))


def exact_tarone(n_total: int, n_positive: int, x: int) -> Fraction:
    return Fraction(math.comb(n_positive, x), math.comb(n_total, x))


def achievable(n_total: int, n_positive: int, x: int) -> range:
    return range(max(0, x - (n_total - n_positive)), min(x, n_positive) + 1)


def context(n_total: int, n_positive: int) -> StatContext:
    return StatContext(n_total=n_total, n_positive=n_positive)


def close(value: float, exact: Fraction) -> bool:
    if exact == 0:
        return value == 0.0
    return abs(Fraction(value) - exact) / exact <= Fraction(1, 10**10)


class TestStatContext:
    """Test the log-factorial table."""

    def test_table(self):
        ctx = context(30, 12)

        assert ctx.log_factorials[0] == 0.0
        assert ctx.log_factorials.shape == (31,)
        assert ctx.log_factorials[10] == pytest.approx(math.lgamma(11))
        assert all(
            ctx.log_factorials[k + 1] > ctx.log_factorials[k] for k in range(1, 30)
        )

    def test_table_is_read_only(self):
        with pytest.raises(ValueError):
            context(5, 2).log_factorials[1] = 1.0

    def test_positive_above_total(self):
        with pytest.raises(ValueError, match="n_positive"):
            context(3, 4)

    def test_log_binomial(self):
        assert math.exp(log_binomial(context(10, 5), 10, 3)) == pytest.approx(120)


class TestFisherP:
    """Test the one-sided Fisher exact P-value."""

    @pytest.mark.parametrize(
        "n_total,n_positive,x,n,expected",
        [
            (4, 2, 2, 2, Fraction(1, 6)),
            (10, 5, 3, 3, Fraction(10, 120)),
            (10, 5, 5, 5, Fraction(1, 252)),
        ],
    )
    def test_known_values(self, n_total, n_positive, x, n, expected):
        p = fisher_p(context(n_total, n_positive), PatternSupport(total=x, positive=n))

        assert close(p, expected)

    def test_full_tail_is_exactly_one(self):
        ctx = context(12, 5)

        for x in range(13):
            assert fisher_p(ctx, PatternSupport(total=x, positive=0)) == 1.0

    def test_impossible_table(self):
        with pytest.raises(StatisticsError):
            fisher_p(context(10, 3), PatternSupport(total=5, positive=4))
        with pytest.raises(StatisticsError):
            fisher_p(context(10, 8), PatternSupport(total=5, positive=1))

    def test_matches_rational_oracle(self):
        for n_total in range(1, 31):
            for n_positive in range(n_total + 1):
                ctx = context(n_total, n_positive)
                for x in range(n_total + 1):
                    for n in achievable(n_total, n_positive, x):
                        p = fisher_p(ctx, PatternSupport(total=x, positive=n))
                        assert close(p, exact_fisher(n_total, n_positive, x, n)), (
                            n_total,
                            n_positive,
                            x,
                            n,
                        )

    @given(
        n_total=st.integers(2, 20),
        data=st.data(),
    )
    def test_non_increasing_in_positive_support(self, n_total, data):
        n_positive = data.draw(st.integers(1, n_total - 1))
        x = data.draw(st.integers(0, n_total))
        ctx = context(n_total, n_positive)

        values = [
            fisher_p(ctx, PatternSupport(total=x, positive=n))
            for n in achievable(n_total, n_positive, x)
        ]

        assert values == sorted(values, reverse=True)

    def test_large_database_stays_finite(self):
        ctx = context(100_000, 50_000)

        p = fisher_p(ctx, PatternSupport(total=2_000, positive=1_400))

        assert 0.0 <= p < 1e-50


class TestTaroneBound:
    """Test the minimum achievable P-value."""

    def test_known_values(self):
        ctx = context(10, 5)

        assert tarone_bound(ctx, 0) == 1.0
        assert close(tarone_bound(ctx, 2), Fraction(10, 45))
        assert tarone_bound(ctx, 6) == 0.0

    def test_out_of_range(self):
        with pytest.raises(StatisticsError):
            tarone_bound(context(10, 5), 11)
        with pytest.raises(StatisticsError):
            tarone_bound(context(10, 5), -1)

    def test_matches_rational_oracle(self):
        for n_total in range(1, 31):
            for n_positive in range(n_total + 1):
                ctx = context(n_total, n_positive)
                for x in range(n_positive + 1):
                    assert close(
                        tarone_bound(ctx, x), exact_tarone(n_total, n_positive, x)
                    )

    def test_dominated_by_every_achievable_p_value(self):
        for n_total in range(1, 21):
            for n_positive in range(n_total + 1):
                ctx = context(n_total, n_positive)
                for x in range(n_total + 1):
                    bound = tarone_bound(ctx, x)
                    for n in achievable(n_total, n_positive, x):
                        assert bound <= fisher_p(ctx, PatternSupport(total=x, positive=n))

    def test_monotone_non_increasing(self):
        for n_total in range(1, 201):
            ctx = context(n_total, n_total // 3)
            values = [tarone_bound(ctx, x) for x in range(n_total + 1)]
            assert values == sorted(values, reverse=True), n_total


class TestLampCondition:
    """Test f(lambda - 1) > alpha / CS and the corrected level."""

    def test_no_closed_sets(self):
        assert not lamp_condition_holds(context(10, 5), 3, 0, 0.05)

    def test_lambda_one_always_holds(self):
        for cs in (1, 10, 10_000):
            assert lamp_condition_holds(context(10, 5), 1, cs, 0.99)

    def test_worked_example(self):
        assert lamp_condition_holds(context(10, 5), 3, 5, 0.05)
        assert not lamp_condition_holds(context(10, 5), 6, 5, 0.05)

    @pytest.mark.parametrize(
        "lam,cs,alpha", [(0, 1, 0.05), (1, -1, 0.05), (1, 1, 0.0), (1, 1, 1.0)]
    )
    def test_preconditions(self, lam, cs, alpha):
        with pytest.raises(StatisticsError):
            lamp_condition_holds(context(10, 5), lam, cs, alpha)

    def test_corrected_threshold(self):
        assert corrected_threshold(0.05, 1) == 0.05
        assert corrected_threshold(0.05, 5) == pytest.approx(0.01)
        assert corrected_threshold(0.05, 90_999) == pytest.approx(5.4946e-7, rel=1e-4)

    def test_corrected_threshold_needs_closed_sets(self):
        with pytest.raises(StatisticsError):
            corrected_threshold(0.05, 0)
