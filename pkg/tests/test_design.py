import math

import pytest
from hypothesis import assume, given, strategies as st

from repsuccess.design import (
    c_from_d_two_trials,
    c_from_dmin_rs,
    c_from_power_rs,
    c_from_power_two_trials,
    power_limit_rs,
)
from repsuccess.errors import DomainError, InfeasibleDesignError
from repsuccess.numkernel import normal_isf
from repsuccess.power import TWO_TRIALS, PowerSpec, power_2tr_conditional, power_rs_conditional
from repsuccess.sceptical import d_inf, d_min, golden_level, nominal_level

GOLDEN = golden_level(0.025)
Z_A = normal_isf(0.025)


class TestFromDmin:
    def test_round_trip(self):
        c = c_from_dmin_rs(2.5, GOLDEN, 1.0)
        assert abs(d_min(2.5, c, GOLDEN) - 1.0) <= 1e-9

    def test_blows_up_near_limit(self):
        limit = d_inf(2.8, GOLDEN)
        cs = [c_from_dmin_rs(2.8, GOLDEN, limit + eps) for eps in (1e-1, 1e-3, 1e-6)]
        assert cs[0] < cs[1] < cs[2] and cs[2] > 1e4

    def test_below_limit_infeasible(self):
        limit = d_inf(2.8, GOLDEN)
        with pytest.raises(InfeasibleDesignError, match="limiting relative effect size"):
            c_from_dmin_rs(2.8, GOLDEN, limit - 1e-6)

    def test_impossible_original(self):
        with pytest.raises(InfeasibleDesignError):
            c_from_dmin_rs(1.2, GOLDEN, 1.0)

    @given(st.floats(1.6, 6.0), st.floats(0.01, 3.0))
    def test_round_trip_property(self, z_o, extra):
        assume(z_o > GOLDEN.z_alpha_s * 1.01)
        target = d_inf(z_o, GOLDEN) + extra
        c = c_from_dmin_rs(z_o, GOLDEN, target)
        assert c > 0
        assert abs(d_min(z_o, c, GOLDEN) - target) <= 1e-9 * max(1.0, target)

    @given(st.floats(1.6, 6.0), st.floats(0.01, 2.0), st.floats(0.01, 2.0))
    def test_decreasing_in_target(self, z_o, e1, e2):
        assume(z_o > GOLDEN.z_alpha_s * 1.01 and abs(e1 - e2) > 1e-6)
        limit = d_inf(z_o, GOLDEN)
        lo, hi = sorted((e1, e2))
        assert c_from_dmin_rs(z_o, GOLDEN, limit + lo) > c_from_dmin_rs(z_o, GOLDEN, limit + hi)


class TestFromDTwoTrials:
    def test_unit(self):
        assert c_from_d_two_trials(2.8, 0.025, Z_A / 2.8) == pytest.approx(1.0, rel=1e-15)

    def test_inverse_square(self):
        assert c_from_d_two_trials(2.8, 0.025, 0.25) == pytest.approx(4 * c_from_d_two_trials(2.8, 0.025, 0.5))

    def test_pyc(self):
        assert c_from_d_two_trials(2.27, 0.025, 0.38) == pytest.approx((Z_A / (0.38 * 2.27)) ** 2, rel=1e-14)
        assert c_from_d_two_trials(2.27, 0.025, 0.38) == pytest.approx(5.16, abs=0.01)

    @given(st.floats(0.5, 6), st.floats(0.05, 3))
    def test_round_trip(self, z_o, d):
        c = c_from_d_two_trials(z_o, 0.025, d)
        # replication z-value d * sqrt(c) * z_o sits exactly at the threshold
        assert d * math.sqrt(c) * z_o == pytest.approx(Z_A, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            c_from_d_two_trials(0.0, 0.025, 0.5)
        with pytest.raises(DomainError):
            c_from_d_two_trials(2.0, 0.025, -0.5)


class TestFromPowerRs:
    def test_borderline_infeasible(self):
        assert power_limit_rs(Z_A, GOLDEN) == 0.5
        with pytest.raises(InfeasibleDesignError):
            c_from_power_rs(Z_A, GOLDEN, 0.8)

    def test_above_alpha_infeasible(self):
        assert power_limit_rs(normal_isf(0.04), GOLDEN) == 0.0
        with pytest.raises(InfeasibleDesignError):
            c_from_power_rs(normal_isf(0.04), GOLDEN, 0.01)

    def test_borderline_below_half_feasible(self):
        c = c_from_power_rs(Z_A, GOLDEN, 0.4)
        assert power_rs_conditional(PowerSpec(Z_A, c, GOLDEN)) == pytest.approx(0.4, abs=1e-6)

    def test_convincing_original(self):
        z_o = normal_isf(0.001)
        c = c_from_power_rs(z_o, GOLDEN, 0.9)
        assert power_rs_conditional(PowerSpec(z_o, c, GOLDEN)) == pytest.approx(0.9, abs=1e-6)

    def test_extreme_target(self):
        z_o = normal_isf(0.02)
        c = c_from_power_rs(z_o, GOLDEN, 0.999999)
        assert 10 < c < 1e6
        assert power_rs_conditional(PowerSpec(z_o, c, GOLDEN)) == pytest.approx(0.999999, abs=1e-6)

    def test_shrinkage_limit(self):
        assert power_limit_rs(normal_isf(0.019), GOLDEN, shrinkage=0.2) == 0.0
        assert power_limit_rs(normal_isf(0.017), GOLDEN, shrinkage=0.2) == 1.0
        c0 = c_from_power_rs(normal_isf(0.005), GOLDEN, 0.8)
        c2 = c_from_power_rs(normal_isf(0.005), GOLDEN, 0.8, shrinkage=0.2)
        assert c2 > c0

    def test_nominal(self):
        level = nominal_level(0.025)
        assert power_limit_rs(normal_isf(0.01), level) == 0.0
        c = c_from_power_rs(normal_isf(0.001), level, 0.8)
        assert power_rs_conditional(PowerSpec(normal_isf(0.001), c, level)) == pytest.approx(0.8, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            c_from_power_rs(3.0, GOLDEN, 1.0)

    @given(st.floats(1e-6, 0.0249), st.floats(0.05, 0.99), st.floats(0.0, 0.3))
    def test_round_trip_property(self, p_o, target, s):
        z_o = normal_isf(p_o)
        try:
            c = c_from_power_rs(z_o, GOLDEN, target, s)
        except InfeasibleDesignError:
            assert power_limit_rs(z_o, GOLDEN, s) <= target or \
                power_rs_conditional(PowerSpec(z_o, 1e-12, GOLDEN, s)) > target
            return
        assert power_rs_conditional(PowerSpec(z_o, c, GOLDEN, s)) == pytest.approx(target, abs=1e-6)


class TestFromPowerTwoTrials:
    def test_half(self):
        z_o = 2.8
        assert c_from_power_two_trials(z_o, 0.025, 0.5) == pytest.approx((Z_A / z_o) ** 2, rel=1e-12)

    def test_round_trip_with_shrinkage(self):
        c = c_from_power_two_trials(2.8, 0.025, 0.9, 0.2)
        spec = PowerSpec(2.8, c, GOLDEN, 0.2, method=TWO_TRIALS)
        assert abs(power_2tr_conditional(spec) - 0.9) <= 1e-9

    def test_not_significant(self):
        with pytest.raises(InfeasibleDesignError):
            c_from_power_two_trials(normal_isf(0.03), 0.025, 0.8)

    def test_target_below_alpha(self):
        with pytest.raises(InfeasibleDesignError):
            c_from_power_two_trials(2.8, 0.025, 0.01)

    @given(st.floats(1e-8, 0.025), st.floats(0.03, 0.999), st.floats(0, 0.6))
    def test_round_trip_property(self, p_o, target, s):
        z_o = normal_isf(p_o)
        c = c_from_power_two_trials(z_o, 0.025, target, s)
        spec = PowerSpec(z_o, c, GOLDEN, s, method=TWO_TRIALS)
        assert abs(power_2tr_conditional(spec) - target) <= 1e-9
