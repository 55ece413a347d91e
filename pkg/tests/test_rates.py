import math

import pytest

from repsuccess.errors import DomainError
from repsuccess.numkernel import find_root, normal_isf
from repsuccess.rates import (
    CLOSED_FORM,
    QUADRATURE,
    ProjectPowerSpec,
    project_power_rs,
    project_power_two_trials,
    t1e_closed_c1,
    t1e_quadrature,
    t1e_two_trials,
)
from repsuccess.sceptical import custom_level, golden_level, nominal_level

from . import oracles

GOLDEN = golden_level(0.025)
NOMINAL = nominal_level(0.025)
GRID = [0.1, 0.25, 0.5, 1, 2, 5, 10, 20]


def pp(c, level=GOLDEN, restrict=False, alpha=0.025, beta=0.1):
    return ProjectPowerSpec(alpha, beta, c, level, restrict)


class TestTypeOneError:
    def test_closed_form_values(self):
        assert t1e_closed_c1(GOLDEN).value == pytest.approx(0.000515, abs=5e-6)
        assert t1e_closed_c1(NOMINAL).value == pytest.approx(0.000022, abs=3e-6)
        assert t1e_closed_c1(GOLDEN).method_tag == CLOSED_FORM

    def test_half_level(self):
        assert t1e_closed_c1(custom_level(0.025, 0.4999999999)).value == pytest.approx(0.25, abs=1e-9)

    @pytest.mark.parametrize("level", [GOLDEN, NOMINAL, golden_level(0.05), golden_level(0.001)])
    def test_quadrature_matches_closed_form(self, level):
        q = t1e_quadrature(1.0, level)
        assert abs(q.value - t1e_closed_c1(level).value) <= 1e-9
        assert q.method_tag == QUADRATURE and q.abs_error_estimate <= 1e-9

    def test_strictly_decreasing_in_c(self):
        for level in (GOLDEN, NOMINAL):
            vals = [t1e_quadrature(c, level).value for c in GRID]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_crossing_with_two_trials(self):
        c_star = find_root(lambda c: t1e_quadrature(c, GOLDEN).value - 0.000625, 0.3, 3.0)
        assert c_star == pytest.approx(0.85, abs=0.05)
        assert t1e_quadrature(0.85, GOLDEN).value == pytest.approx(0.000625, abs=2e-5)

    def test_alpha_crossing_at_c1(self):
        f = lambda a: t1e_closed_c1(golden_level(a)).value - a * a
        assert find_root(f, 0.02, 0.1) == pytest.approx(0.058, abs=0.002)
        assert abs(f(0.058)) <= 1e-4
        assert f(0.03) < 0 < f(0.09)

    def test_nominal_small_c_limit(self):
        assert t1e_quadrature(1e-4, NOMINAL).value == pytest.approx(0.025 ** 2, rel=0.05)

    def test_two_trials(self):
        assert t1e_two_trials(0.025).value == 0.025 ** 2
        assert t1e_two_trials(0.058).value == pytest.approx(0.003364, abs=1e-12)
        with pytest.raises(DomainError):
            t1e_two_trials(0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            t1e_quadrature(0.0, GOLDEN)
        with pytest.raises(DomainError):
            t1e_quadrature(math.inf, GOLDEN)

    def test_monte_carlo_c2(self):
        p, se = oracles.monte_carlo_rate(10_000_000, 2.0, GOLDEN.z_alpha_s, seed=5)
        assert abs(t1e_quadrature(2.0, GOLDEN).value - p) <= 3 * se


class TestProjectPower:
    def test_spec(self):
        spec = pp(1.0)
        assert spec.mu == pytest.approx(normal_isf(0.025) + normal_isf(0.1))
        with pytest.raises(DomainError):
            pp(1.0, beta=1.0)
        with pytest.raises(DomainError):
            pp(1.0, alpha=0.3, beta=0.8)  # mu < 0

    def test_two_trials_closed_form(self):
        assert project_power_two_trials(pp(1.0)).value == pytest.approx(0.81, abs=1e-15)
        assert project_power_two_trials(pp(0.25)).value == pytest.approx(0.331, abs=5e-4)
        assert project_power_two_trials(pp(1e6)).value == pytest.approx(0.9, abs=1e-12)

    def test_two_trials_increasing(self):
        vals = [project_power_two_trials(pp(c)).value for c in GRID]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_golden_dominates_two_trials(self):
        for c in GRID + [0.11, 19.9]:
            assert project_power_rs(pp(c)).value > project_power_two_trials(pp(c)).value

    def test_golden_large_c(self):
        assert project_power_rs(pp(10.0)).value > 0.9

    def test_nominal_plateau(self):
        assert project_power_rs(pp(20.0, NOMINAL)).value == pytest.approx(0.80, abs=0.03)

    def test_restricted(self):
        for c in GRID:
            full = project_power_rs(pp(c)).value
            restricted = project_power_rs(pp(c, restrict=True)).value
            assert restricted <= full
        # at the nominal level both integrals start at z_alpha
        assert project_power_rs(pp(2.0, NOMINAL, True)).value == pytest.approx(
            project_power_rs(pp(2.0, NOMINAL)).value, abs=1e-14
        )

    def test_restricted_gap_vanishes(self):
        gaps = []
        for alpha_s in (0.06, 0.04, 0.03, 0.026):
            level = custom_level(0.025, alpha_s)
            gaps.append(project_power_rs(pp(1.0, level)).value - project_power_rs(pp(1.0, level, True)).value)
        assert all(a > b for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 2e-3

    def test_error_estimates(self):
        for c in (0.5, 5.0):
            assert project_power_rs(pp(c)).abs_error_estimate <= 1e-9

    def test_monte_carlo(self):
        spec = pp(0.5)
        p, se = oracles.monte_carlo_rate(2_000_000, 0.5, GOLDEN.z_alpha_s, mu=spec.mu, seed=6)
        assert abs(project_power_rs(spec).value - p) <= 3 * se
