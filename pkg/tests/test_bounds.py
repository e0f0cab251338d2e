"""Closed-form bounds: reference values, inversions, monotonicity, ceilings."""

import math

import numpy as np
import pytest

from entrobound import (
    InfeasibleRateError,
    MeasurementFamily,
    legacy_epsilon,
    legacy_min_n,
    min_n_for_rate,
    plain_minentropy_rate_bb84,
    renyi_to_smooth_min_entropy,
    rate_bb84,
    rate_six,
    renyi_floor,
)
from helpers import rate_scan

BB84 = MeasurementFamily.BB84
SIX = MeasurementFamily.SIX_STATE

LOG2_200 = math.log2(200.0)


class TestLegacyBound:
    def test_reference_operating_point(self):
        # delta = 0.0106 needs n of order 2.4e8 to reach a 10% error
        assert 0.095 <= legacy_epsilon(239_000_000, 0.0106) <= 0.105
        n = legacy_min_n(0.0106, 0.1)
        assert n == pytest.approx(2.3975e8, rel=0.01)

    def test_doubling_squares_the_error(self):
        for n, delta in [(10_000, 0.05), (123_457, 0.2), (2_000_000, 0.0106)]:
            assert legacy_epsilon(2 * n, delta) == pytest.approx(
                legacy_epsilon(n, delta) ** 2, rel=1e-12
            )

    def test_strictly_decreasing_in_n(self):
        values = [legacy_epsilon(n, 0.05) for n in (10**3, 10**4, 10**5, 10**6, 10**7)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_min_n_round_trip(self):
        for delta in (0.01, 0.05, 0.1, 0.25, 0.5):
            for eps in (1e-10, 1e-6, 1e-3, 0.1, 0.5):
                n = legacy_min_n(delta, eps)
                assert legacy_epsilon(n, delta) <= eps
                if n > 1:
                    assert legacy_epsilon(n - 1, delta) > eps

    def test_moderate_delta_value(self):
        # closed form 128 (2 + log2(2/delta))^2 ln(1/eps) / delta^2, ceil'd
        n = legacy_min_n(0.05, 0.1)
        assert n == 6_320_284
        assert legacy_epsilon(n, 0.05) <= 0.1 < legacy_epsilon(n - 1, 0.05)

    def test_n_scales_with_log_inverse_eps(self):
        base = legacy_min_n(0.0106, 0.1)
        stricter = legacy_min_n(0.0106, 0.01)
        assert stricter / base == pytest.approx(math.log(100) / math.log(10), rel=1e-6)

    @pytest.mark.parametrize("delta", [0.0, -0.1, 0.51, 1.0])
    def test_delta_domain(self, delta):
        with pytest.raises(ValueError):
            legacy_epsilon(1000, delta)

    @pytest.mark.parametrize("n", [0, -5, 2.5])
    def test_block_length_domain(self, n):
        with pytest.raises(ValueError):
            legacy_epsilon(n, 0.1)


class TestNewRates:
    def test_reference_operating_point(self):
        result = rate_bb84(23_600, 0.1)
        # independent dense-scan oracle
        assert result.rate == pytest.approx(rate_scan(23_600, 0.1, BB84), abs=1e-9)
        assert result.rate >= 0.4894
        assert result.rate == pytest.approx(0.48940546905, abs=1e-9)
        assert 0.04 <= result.s_opt <= 0.08

    def test_large_block_asymptote(self):
        assert 0.4999 <= rate_bb84(10**12, 0.1).rate <= 0.5
        assert 0.6665 <= rate_six(10**12, 0.1).rate <= 2.0 / 3.0

    def test_small_epsilon_point(self):
        result = rate_bb84(100_000, 1e-6)
        assert result.rate == pytest.approx(rate_scan(100_000, 1e-6, BB84), abs=1e-9)
        assert result.rate == pytest.approx(0.4880, abs=2e-4)

    def test_fixed_s_matches_closed_form(self):
        for s in (0.25, 0.5, 1.0):
            for family, fn in ((BB84, rate_bb84), (SIX, rate_six)):
                result = fn(23_600, 0.1, s)
                expected = renyi_floor(1.0 + s, family) - LOG2_200 / (s * 23_600)
                assert result.rate == expected
                assert result.s_opt == s

    def test_fixed_s_understates_maximum(self):
        # plugging in s = 0.1 lands visibly below the maximised value
        fixed = rate_bb84(23_600, 0.1, s=0.1).rate
        assert fixed == pytest.approx(0.488098, abs=1e-5)
        assert rate_bb84(23_600, 0.1).rate > fixed

    def test_six_single_point_arithmetic(self):
        # at s=1: log2(3/2) minus log2(8)/100
        result = rate_six(100, 0.5, s=1.0)
        assert result.rate == pytest.approx(math.log2(1.5) - 0.03, abs=1e-14)

    def test_six_dominates_bb84(self):
        for n, eps in [(100, 0.5), (23_600, 0.1), (10**9, 1e-8)]:
            assert rate_six(n, eps).rate > rate_bb84(n, eps).rate

    def test_monotone_in_n_and_eps(self):
        ns = np.unique(np.geomspace(10, 1e8, 20).astype(int))
        epsilons = np.geomspace(1e-10, 0.9, 20)
        for fn, ceiling in ((rate_bb84, 0.5), (rate_six, 2.0 / 3.0)):
            for eps in epsilons:
                rates = [fn(int(n), float(eps)).rate for n in ns]
                assert all(b - a >= -1e-11 for a, b in zip(rates, rates[1:]))
                assert all(r <= ceiling for r in rates)
            for n in ns:
                rates = [fn(int(n), float(eps)).rate for eps in epsilons]
                assert all(b - a >= -1e-11 for a, b in zip(rates, rates[1:]))

    def test_vacuous_bound_keeps_sign(self):
        # tiny blocks give a negative certified rate; callers need the sign
        assert rate_bb84(1, 0.1).rate < 0.0
        assert rate_six(2, 0.01).rate < 0.0

    def test_s_opt_attains_reported_rate(self):
        for n, eps in [(500, 0.3), (23_600, 0.1), (10**7, 1e-6)]:
            result = rate_bb84(n, eps)
            at_s_opt = rate_bb84(n, eps, s=result.s_opt).rate
            assert abs(at_s_opt - result.rate) <= 1e-10
            assert 0.0 < result.s_opt <= 1.0

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.5, 2.0])
    def test_epsilon_domain(self, eps):
        with pytest.raises(ValueError):
            rate_bb84(1000, eps)

    @pytest.mark.parametrize("s", [0.0, -0.1, 1.1])
    def test_fixed_s_domain(self, s):
        with pytest.raises(ValueError):
            rate_six(1000, 0.1, s)


class TestRenyiFloor:
    def test_frozen_values(self):
        assert renyi_floor(2.0, BB84) == pytest.approx(2.0 - math.log2(3.0), abs=1e-15)
        assert renyi_floor(2.0, SIX) == pytest.approx(math.log2(3.0) - 1.0, abs=1e-15)
        assert renyi_floor(1.5, BB84) == pytest.approx(0.45689339367277615, abs=1e-14)

    def test_shannon_limit(self):
        assert renyi_floor(1.0 + 1e-6, BB84) == pytest.approx(0.5, abs=1e-5)
        assert renyi_floor(1.0 + 1e-6, SIX) == pytest.approx(2.0 / 3.0, abs=1e-5)

    def test_nonincreasing_in_alpha(self):
        alphas = np.linspace(1.0 + 1e-9, 2.0, 100)
        for family in (BB84, SIX):
            floors = [renyi_floor(a, family) for a in alphas]
            assert all(b - a <= 1e-12 for a, b in zip(floors, floors[1:]))
            assert all(0.0 < f < 1.0 for f in floors)

    def test_matches_rate_without_correction_term(self):
        # the floor is the n -> infinity rate at fixed s = alpha - 1
        for s in (0.25, 0.5, 1.0):
            big = rate_bb84(2**60, 0.5, s=s).rate
            assert big == pytest.approx(renyi_floor(1.0 + s, BB84), abs=1e-12)

    @pytest.mark.parametrize("alpha", [1.0, 2.1, 0.9])
    def test_domain(self, alpha):
        with pytest.raises(ValueError):
            renyi_floor(alpha, BB84)


class TestChainStep:
    def test_worked_value(self):
        assert renyi_to_smooth_min_entropy(0.83008, 2.0, 0.1) == pytest.approx(-6.813776189774725, abs=1e-12)

    def test_unit_epsilon(self):
        # 2/eps^2 = 2 exactly, so exactly one bit is paid
        assert renyi_to_smooth_min_entropy(5.0, 2.0, 1.0) == 4.0

    def test_coefficient_at_alpha_three_halves(self):
        h = 0.3125
        assert renyi_to_smooth_min_entropy(h, 1.5, 0.1) == pytest.approx(h - 2.0 * LOG2_200, abs=1e-12)

    def test_strictly_below_input(self):
        for eps in (0.01, 0.5, 0.99):
            assert renyi_to_smooth_min_entropy(1.0, 2.0, eps) < 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            renyi_to_smooth_min_entropy(1.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            renyi_to_smooth_min_entropy(1.0, 2.0, 0.0)


def test_plain_minentropy_constant():
    value = plain_minentropy_rate_bb84()
    assert value == pytest.approx(-math.log2(0.5 + 0.5 / math.sqrt(2.0)), abs=1e-15)
    assert value == pytest.approx(0.228446696836, abs=1e-10)
    assert value < renyi_floor(2.0, BB84)
    assert value < 0.5


class TestMinBlockLength:
    def test_new_bound_reference_point(self):
        n = min_n_for_rate(0.4894, 0.1, BB84, "new")
        assert 2.3e4 <= n <= 2.4e4
        assert rate_bb84(n, 0.1).rate >= 0.4894 > rate_bb84(n - 1, 0.1).rate

    def test_legacy_reference_point(self):
        n = min_n_for_rate(0.4894, 0.1, BB84, "legacy")
        assert n == legacy_min_n(0.0106, 0.1)
        assert n == pytest.approx(2.39e8, rel=0.01)

    def test_moderate_rate_against_exhaustive_scan(self):
        target = 0.45
        # independent oracle: first block length in [1, 1e4] that reaches target
        scan_n = next(
            n for n in range(1, 10_001) if rate_bb84(n, 0.1).rate >= target
        )
        assert 1.0e3 <= scan_n <= 1.2e3
        assert min_n_for_rate(target, 0.1, BB84, "new") == scan_n

    def test_six_state_inversion(self):
        n = min_n_for_rate(0.6, 0.1, SIX, "new")
        assert rate_six(n, 0.1).rate >= 0.6 > rate_six(n - 1, 0.1).rate

    def test_new_dominates_legacy_in_figure_region(self):
        for rate in (0.45, 0.47, 0.49):
            for eps in (1e-10, 1e-4, 0.2):
                new = min_n_for_rate(rate, eps, BB84, "new")
                legacy = min_n_for_rate(rate, eps, BB84, "legacy")
                assert new <= legacy

    def test_infeasible_targets(self):
        with pytest.raises(InfeasibleRateError):
            min_n_for_rate(0.5, 0.1, BB84, "new")
        with pytest.raises(InfeasibleRateError):
            min_n_for_rate(0.7, 0.1, SIX, "new")
        with pytest.raises(InfeasibleRateError):
            min_n_for_rate(0.5, 0.1, BB84, "legacy")

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            min_n_for_rate(0.45, 0.1, SIX, "legacy")
        with pytest.raises(ValueError):
            min_n_for_rate(0.45, 0.1, BB84, "fast")
        with pytest.raises(ValueError):
            min_n_for_rate(-0.1, 0.1, BB84, "new")

    def test_six_ceiling_allows_rates_above_half(self):
        n = min_n_for_rate(0.55, 0.2, SIX, "new")
        assert rate_six(n, 0.2).rate >= 0.55
