"""Replication sample size: solve the success criteria and power curves for c."""

from __future__ import annotations

import math

from .errors import DomainError, InfeasibleDesignError
from .numkernel import find_root, normal_isf, normal_sf
from .power import PowerSpec, power_rs_conditional
from .sceptical import SuccessLevel, _check_level, d_inf, k_factor

# log-scale search window for c, widened on demand
C_SEARCH_LOW = 1e-4
C_SEARCH_HIGH = 1e6
_C_HARD_LOW = 1e-12
_C_HARD_HIGH = 1e16
_LIMIT_TIE = 1e-12


def c_from_dmin_rs(z_o: float, level: SuccessLevel, d_target: float) -> float:
    """Relative sample size at which the minimum relative effect size equals ``d_target``.

    Raises
    ------
    InfeasibleDesignError
        If ``d_target`` does not exceed the limiting relative effect size, or
        success is impossible for this original result.
    """
    k = k_factor(z_o, level)
    if k <= 1.0:
        raise InfeasibleDesignError(
            f"original z-value {z_o:g} does not exceed z_alpha_S = {level.z_alpha_s:g}; "
            "replication success is impossible"
        )
    limit = d_inf(z_o, level)
    denom = d_target ** 2 * k * (k - 1.0) - 1.0
    if not d_target > limit or denom <= 0.0:
        raise InfeasibleDesignError(
            f"d_target = {d_target:g} must exceed the limiting relative effect size d_inf = {limit:.6g}"
        )
    return (k - 1.0) / denom


def c_from_d_two_trials(z_o: float, alpha: float, d_target: float) -> float:
    """c = z_alpha^2 / (d_target^2 z_o^2), the relative sample size making d_target just significant."""
    if not (z_o > 0 and d_target > 0):
        raise DomainError("z_o and d_target must be positive")
    z_a = normal_isf(_check_level(alpha))
    return (z_a / (d_target * z_o)) ** 2


def power_limit_rs(z_o: float, level: SuccessLevel, shrinkage: float = 0.0) -> float:
    """Conditional power of replication success as c -> infinity: 0, 0.5 or 1."""
    limit = d_inf(z_o, level)
    if math.isinf(limit):
        return 0.0
    gap = (1.0 - shrinkage) - limit
    if abs(gap) <= _LIMIT_TIE:
        return 0.5
    return 1.0 if gap > 0 else 0.0


def c_from_power_rs(
    z_o: float, level: SuccessLevel, power_target: float, shrinkage: float = 0.0
) -> float:
    """Smallest relative sample size giving conditional power ``power_target``.

    Conditional power is increasing in c whenever the target is attainable,
    so a bracketed search on log(c) finds the unique solution. Infeasibility
    is decided from the analytic c -> infinity limit before searching.
    """
    if not (0.0 < power_target < 1.0):
        raise DomainError(f"power_target must lie in (0, 1), got {power_target!r}")
    z_o = abs(z_o)
    limit = power_limit_rs(z_o, level, shrinkage)
    if limit <= power_target:
        raise InfeasibleDesignError(
            f"conditional power tends to {limit:g} as c grows; target {power_target:g} is unattainable"
        )

    def gap(log_c: float) -> float:
        spec = PowerSpec(z_o, math.exp(log_c), level, shrinkage)
        return power_rs_conditional(spec) - power_target

    lo, hi = math.log(C_SEARCH_LOW), math.log(C_SEARCH_HIGH)
    while gap(hi) < 0:
        if hi >= math.log(_C_HARD_HIGH):
            raise InfeasibleDesignError(f"target {power_target:g} needs c > {_C_HARD_HIGH:g}")
        hi += math.log(100.0)
    while gap(lo) > 0:
        if lo <= math.log(_C_HARD_LOW):
            raise InfeasibleDesignError(
                f"target {power_target:g} lies below the power attainable as c -> 0"
            )
        lo -= math.log(100.0)
    return math.exp(find_root(gap, lo, hi, x_tol=1e-13))


def c_from_power_two_trials(
    z_o: float, alpha: float, power_target: float, shrinkage: float = 0.0
) -> float:
    """Closed-form inverse of the two-trials conditional power:
    sqrt(c) = (z_alpha + Phi^{-1}(power)) / ((1 - s) z_o).
    """
    z_a = normal_isf(_check_level(alpha))
    if not (0.0 < power_target < 1.0):
        raise DomainError(f"power_target must lie in (0, 1), got {power_target!r}")
    if not (0.0 <= shrinkage < 1.0):
        raise DomainError(f"shrinkage must lie in [0, 1), got {shrinkage!r}")
    if z_o < z_a:
        raise InfeasibleDesignError(
            f"p_o = {normal_sf(z_o):.3g} exceeds alpha = {alpha:g}; two-trials power is identically zero"
        )
    num = z_a - normal_isf(power_target)
    if num <= 0.0:
        raise InfeasibleDesignError(
            f"target {power_target:g} does not exceed the c -> 0 power alpha = {alpha:g}"
        )
    return (num / ((1.0 - shrinkage) * z_o)) ** 2

