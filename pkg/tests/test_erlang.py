"""Tests for Erlang-B blocking and its inverses."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bss_planner.exceptions import TrafficDomainError
from bss_planner.traffic.erlang import (
    GoS,
    erlang_b,
    erlang_b_curve,
    offered_traffic,
    offered_traffic_many,
    required_channels,
)


def direct_erlang_b(n: int, a: float) -> float:
    """(a^n / n!) / sum_k a^k / k!, summed in log space to avoid overflow."""
    logs = [k * math.log(a) - math.lgamma(k + 1) for k in range(n + 1)]
    top = max(logs)
    total = sum(math.exp(v - top) for v in logs)
    return math.exp(logs[-1] - top) / total


class TestErlangB:
    """Tests for erlang_b."""

    def test_zero_channels_always_block(self):
        """Test that E(0, a) = 1 for any traffic."""
        for a in (0.0, 0.3, 1.0, 250.0):
            assert erlang_b(0, a) == 1.0

    def test_known_small_values(self):
        """Test E(1, 1) = 0.5 and E(2, 1) = 0.2."""
        assert erlang_b(1, 1.0) == pytest.approx(0.5, abs=1e-15)
        assert erlang_b(2, 1.0) == pytest.approx(0.2, abs=1e-15)

    def test_zero_traffic_never_blocks(self):
        """Test that E(n, 0) = 0 once there is a channel."""
        assert erlang_b(1, 0.0) == 0.0
        assert erlang_b(30, 0.0) == 0.0

    @pytest.mark.parametrize("a", [0.5, 5.0, 42.0, 150.0])
    def test_recurrence_matches_direct_sum(self, a):
        """Test recurrence vs closed form agree within 1e-9 relative for n <= 200."""
        for n in range(0, 201, 7):
            expected = direct_erlang_b(n, a)
            assert erlang_b(n, a) == pytest.approx(expected, rel=1e-9)

    def test_large_channel_count_is_stable(self):
        """Test that thousands of channels give a finite probability in [0, 1]."""
        value = erlang_b(4096, 4000.0)
        assert 0.0 < value < 1.0

    def test_negative_inputs_rejected(self):
        """Test that negative channels or traffic raise TrafficDomainError."""
        with pytest.raises(TrafficDomainError):
            erlang_b(-1, 1.0)
        with pytest.raises(TrafficDomainError):
            erlang_b(3, -0.1)
        with pytest.raises(TrafficDomainError):
            erlang_b(2.5, 1.0)

    def test_curve_matches_pointwise_values(self):
        """Test that erlang_b_curve equals erlang_b at every k."""
        curve = erlang_b_curve(12.0, 40)
        assert len(curve) == 41
        for k in (0, 1, 10, 40):
            assert curve[k] == erlang_b(k, 12.0)

    @settings(max_examples=50, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=300),
        a=st.floats(min_value=0.01, max_value=400.0, allow_nan=False),
    )
    def test_monotone_in_channels_and_traffic(self, n, a):
        """Test that blocking falls with more channels and rises with more traffic."""
        assert erlang_b(n + 1, a) <= erlang_b(n, a)
        assert erlang_b(n, a * 1.1) >= erlang_b(n, a)


class TestGoS:
    """Tests for the GoS value type."""

    @pytest.mark.parametrize("value", [0.0, 1.0, -0.02, 1.5])
    def test_out_of_range_rejected(self, value):
        """Test that GoS outside (0, 1) raises TrafficDomainError."""
        with pytest.raises(TrafficDomainError):
            GoS(value)

    def test_default_is_two_percent(self):
        """Test the default grade of service."""
        assert GoS().value == 0.02


class TestOfferedTraffic:
    """Tests for offered_traffic and offered_traffic_many."""

    def test_full_bsc_channel_count(self):
        """Test that 4096 channels carry about 4058 Erlangs at 2% GoS."""
        carried = offered_traffic(4096, 0.02)
        assert 4057.0 <= carried <= 4059.0

    def test_single_channel_closed_form(self):
        """Test n = 1, where E = a / (1 + a) gives a = gos / (1 - gos)."""
        assert offered_traffic(1, 0.5) == pytest.approx(1.0, abs=1e-6)
        assert offered_traffic(1, 0.2) == pytest.approx(0.25, abs=1e-6)

    def test_result_meets_gos(self):
        """Test that the returned traffic never exceeds the target blocking."""
        for n in (1, 8, 116, 240, 1000):
            a = offered_traffic(n, 0.02)
            assert erlang_b(n, a) <= 0.02
            assert erlang_b(n, a + 2e-6) > 0.02

    def test_zero_channels_carry_nothing(self):
        """Test the n = 0 convention."""
        assert offered_traffic(0) == 0.0

    def test_vectorized_matches_scalar(self):
        """Test that offered_traffic_many reproduces the scalar bisection."""
        ns = [0, 1, 2, 30, 116, 240, 497]
        many = offered_traffic_many(ns, 0.02)
        for n, value in zip(ns, many):
            assert value == pytest.approx(offered_traffic(n, 0.02), abs=1e-9)

    def test_vectorized_rejects_negative(self):
        """Test that a negative channel count raises TrafficDomainError."""
        with pytest.raises(TrafficDomainError):
            offered_traffic_many([3, -1])


class TestRequiredChannels:
    """Tests for required_channels and its round trip with offered_traffic."""

    def test_known_values(self):
        """Test small cases from the closed forms."""
        assert required_channels(1.0, 0.5) == 1
        assert required_channels(1.0, 0.2) == 2
        assert required_channels(0.0) == 0

    def test_round_trip_small_range(self):
        """Test required_channels(offered_traffic(n)) == n for n up to 300."""
        carried = offered_traffic_many(range(1, 301), 0.02)
        for n, a in zip(range(1, 301), carried):
            assert required_channels(float(a), 0.02) == n

    @pytest.mark.slow
    def test_round_trip_full_range(self):
        """Test the round-trip identity for every n in [1, 5000] at 2% GoS."""
        ns = np.arange(1, 5001)
        carried = offered_traffic_many(ns, 0.02)
        mismatches = [
            int(n) for n, a in zip(ns, carried) if required_channels(float(a), 0.02) != n
        ]
        assert mismatches == []
