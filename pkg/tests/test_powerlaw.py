import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chaoslab.errors import DomainError, EstimatorRefusal
from chaoslab.powerlaw import (alpha_for_share, empirical_top_share, fit_degree_mle,
                               fit_powerlaw_mle, pareto_share, rank_frequency, sample_pareto)
from chaoslab.rng import bit_generator


class TestFit:
    def test_recovers_exponent(self):
        fit = fit_powerlaw_mle(sample_pareto(2.5, 1.0, 100_000, seed=0), 1.0)
        assert fit.alpha_hat == pytest.approx(2.5, abs=0.05)
        assert fit.n_tail == 100_000
        assert fit.stderr == pytest.approx((fit.alpha_hat - 1) / math.sqrt(100_000))

    def test_hand_computed(self):
        # n / sum(ln x) with x = e, e^2: 1 + 2/3
        xs = [math.e, math.e ** 2] * 5 + [0.5]
        fit = fit_powerlaw_mle(xs, 1.0)
        assert fit.alpha_hat == pytest.approx(1 + 10 / 15)
        assert fit.n_tail == 10

    def test_degenerate_tail_refused(self):
        with pytest.raises(EstimatorRefusal, match="degenerate"):
            fit_powerlaw_mle([2.0] * 50, 2.0)

    def test_small_tail_refused(self):
        with pytest.raises(EstimatorRefusal):
            fit_powerlaw_mle(np.arange(1, 10, dtype=float), 1.0)

    def test_bad_xmin(self):
        with pytest.raises(DomainError):
            fit_powerlaw_mle([1.0] * 20, 0.0)

    def test_split_halves_consistent(self):
        x = sample_pareto(2.5, 1.0, 100_000, seed=3)
        a = fit_powerlaw_mle(x[::2], 1.0)
        b = fit_powerlaw_mle(x[1::2], 1.0)
        assert abs(a.alpha_hat - b.alpha_hat) < 3 * math.hypot(a.stderr, b.stderr)

    @pytest.mark.slow
    def test_coverage_over_seeds(self):
        hits = 0
        for seed in range(100):
            fit = fit_powerlaw_mle(sample_pareto(2.5, 1.0, 100_000, seed), 1.0)
            hits += abs(fit.alpha_hat - 2.5) <= 3 * fit.stderr
        assert hits >= 95

    def test_degree_fit_shift(self):
        deg = np.array([6] * 10 + [12] * 10)
        fit = fit_degree_mle(deg, 6)
        expected = 1 + 20 / (10 * math.log(6 / 5.5) + 10 * math.log(12 / 5.5))
        assert fit.alpha_hat == pytest.approx(expected)
        assert fit.x_min == 6

    def test_degree_fit_refusal(self):
        with pytest.raises(EstimatorRefusal):
            fit_degree_mle([1, 2, 3] * 10, 6)


class TestPareto:
    def test_empty(self):
        assert len(sample_pareto(2.0, 1.0, 0, 1)) == 0

    @given(alpha=st.floats(1.01, 10), x_min=st.floats(1e-3, 1e3), seed=st.integers(0, 2**64 - 1))
    def test_support(self, alpha, x_min, seed):
        try:
            x = sample_pareto(alpha, x_min, 200, seed)
        except DomainError:
            # only reachable when the smallest uniform overflows the power
            assert math.log(x_min) + 53 * math.log(2) / (alpha - 1) > 700
            return
        assert np.all(np.isfinite(x)) and np.all(x >= x_min)

    def test_overflow_refused(self):
        with pytest.raises(DomainError, match="overflow"):
            sample_pareto(1.001, 1.0, 10_000, 0)

    def test_median(self):
        x = sample_pareto(2.0, 1.0, 10**6, seed=5)
        assert np.median(x) == pytest.approx(2.0, abs=0.02)

    def test_deterministic(self):
        assert np.array_equal(sample_pareto(3.0, 2.0, 1000, 9), sample_pareto(3.0, 2.0, 1000, 9))

    def test_matches_raw_stream(self):
        raw = bit_generator(17).random_raw(5)
        u = ((raw >> np.uint64(12)).astype(float) + 0.5) * 2.0 ** -52
        assert np.array_equal(sample_pareto(3.0, 1.0, 5, 17), u ** -0.5)

    @pytest.mark.parametrize("alpha", [1.0, 0.5, math.inf])
    def test_refuses_non_normalizable(self, alpha):
        with pytest.raises(DomainError):
            sample_pareto(alpha, 1.0, 10, 0)


class TestShare:
    def test_limit_at_whole_population(self):
        assert pareto_share(3.0, 1 - 1e-12) == pytest.approx(1.0)

    def test_closed_form_against_numerical_lorenz(self):
        # independent route: integrate x f(x) above the top quantile numerically
        from scipy.integrate import quad
        alpha, top = 3.0, 0.1
        a = alpha - 1
        x_top = top ** (-1 / a)
        dens = lambda x: a * x ** (-alpha)
        mean = quad(lambda x: x * dens(x), 1, np.inf)[0]
        upper = quad(lambda x: x * dens(x), x_top, np.inf)[0]
        assert pareto_share(alpha, top) == pytest.approx(upper / mean, rel=1e-8)

    def test_monte_carlo_alpha_3(self):
        x = sample_pareto(3.0, 1.0, 10**6, seed=0)
        assert empirical_top_share(x, 0.1) == pytest.approx(pareto_share(3.0, 0.1), abs=0.01)

    def test_eighty_twenty_root(self):
        alpha = alpha_for_share(0.8, 0.2)
        assert alpha - 1 == pytest.approx(1.161, abs=0.005)
        assert pareto_share(alpha, 0.2) == pytest.approx(0.8, abs=1e-12)
        # closed-form root: (a - 1)/a = ln 0.8 / ln 0.2
        r = math.log(0.8) / math.log(0.2)
        assert alpha - 1 == pytest.approx(1 / (1 - r), rel=1e-10)

    def test_infinite_mean_refused_by_default(self):
        with pytest.raises(DomainError):
            pareto_share(1.8, 0.2)
        assert pareto_share(1.8, 0.2, allow_infinite_mean=True) == 1.0

    @pytest.mark.parametrize("top", [0.0, 1.0, -0.2])
    def test_bad_fraction(self, top):
        with pytest.raises(DomainError):
            pareto_share(3.0, top)


class TestRankFrequency:
    def test_small(self):
        assert rank_frequency(["a", "b", "a"]) == [(1, 2), (2, 1)]

    def test_all_distinct(self):
        assert rank_frequency(list("abcdef")) == [(r, 1) for r in range(1, 7)]

    def test_tie_order_follows_first_appearance(self):
        assert rank_frequency(list("bbaac"), with_labels=True) == [
            (1, "b", 2), (2, "a", 2), (3, "c", 1)]

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            rank_frequency([])

    def test_zipf_slope(self):
        rng = np.random.Generator(np.random.SFC64(8))
        w = 1.0 / np.arange(1, 1001)
        labels = rng.choice(1000, size=10**6, p=w / w.sum())
        counts = np.array([c for _, c in rank_frequency(labels.tolist())])
        ranks = np.arange(1, 101)
        slope = np.polyfit(np.log(ranks), np.log(counts[:100]), 1)[0]
        assert slope == pytest.approx(-1.0, abs=0.1)

    def test_counts_match_counter(self):
        labels = list("mississippi")
        assert [c for _, c in rank_frequency(labels)] == sorted(Counter(labels).values(),
                                                                reverse=True)
