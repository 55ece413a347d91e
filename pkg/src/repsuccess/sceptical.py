"""Sceptical p-value, success levels and the replication success criteria.

All quantities are one-sided. An original study with a negative estimate is
handled by mirroring both studies, so the original estimate is always taken
as positive and a replication pointing the other way is a direction conflict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (
    ConsistencyError,
    DirectionConflictError,
    DomainError,
    UndefinedRelativeEffectError,
)
from .numkernel import normal_isf, normal_sf, solve_quadratic_stable

PHI = (math.sqrt(5.0) + 1.0) / 2.0
"""The golden ratio."""

# relative slack when cross-checking the three success routes at the boundary
_ROUTE_RTOL = 1e-9

NOMINAL = "nominal"
GOLDEN = "golden"
LIMITING_RES = "limiting-res"
CUSTOM = "custom"
CALIBRATIONS = (NOMINAL, GOLDEN, LIMITING_RES, CUSTOM)


def _check_level(alpha: float, name: str = "alpha") -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 0.5):
        raise DomainError(f"{name} must lie in (0, 0.5), got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class StudyPair:
    """Summary statistics of an original study and its replication.

    ``c`` is the variance ratio sigma_o^2 / sigma_r^2, i.e. the relative
    sample size n_r / n_o when both studies share a unit variance.
    """

    z_o: float
    z_r: float
    c: float

    def __post_init__(self):
        for name in ("z_o", "z_r", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (math.isfinite(self.z_o) and math.isfinite(self.z_r)):
            raise DomainError("z-values must be finite")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"variance ratio c must be positive and finite, got {self.c!r}")

    @classmethod
    def from_p_values(cls, p_o: float, p_r: float, c: float) -> "StudyPair":
        """Build a pair from one-sided p-values, both in the positive direction."""
        return cls(normal_isf(p_o), normal_isf(p_r), c)

    @classmethod
    def from_estimates(cls, theta_o: float, se_o: float, theta_r: float, se_r: float) -> "StudyPair":
        if not (se_o > 0 and se_r > 0):
            raise DomainError("standard errors must be positive")
        return cls(theta_o / se_o, theta_r / se_r, (se_o / se_r) ** 2)

    def oriented(self) -> "StudyPair":
        """Mirror both studies if the original estimate is negative."""
        if self.z_o < 0:
            return StudyPair(-self.z_o, -self.z_r, self.c)
        return self

    @property
    def p_o(self) -> float:
        return normal_sf(self.oriented().z_o)

    @property
    def p_r(self) -> float:
        return normal_sf(self.oriented().z_r)

    @property
    def same_direction(self) -> bool:
        return (self.z_o > 0 and self.z_r > 0) or (self.z_o < 0 and self.z_r < 0)


@dataclass(frozen=True)
class SuccessLevel:
    """A one-sided significance level alpha paired with a success level alpha_S.

    Use the factory functions :func:`nominal_level`, :func:`golden_level`,
    :func:`level_from_limiting_res` and :func:`custom_level` rather than
    constructing this directly.
    """

    alpha: float
    alpha_s: float
    calibration: str = CUSTOM
    d_inf_target: Optional[float] = None
    phi: float = field(default=PHI, repr=False)

    def __post_init__(self):
        _check_level(self.alpha)
        _check_level(self.alpha_s, "alpha_s")
        if self.calibration not in CALIBRATIONS:
            raise DomainError(f"unknown calibration {self.calibration!r}")

    @property
    def z_alpha(self) -> float:
        return normal_isf(self.alpha)

    @property
    def z_alpha_s(self) -> float:
        return normal_isf(self.alpha_s)


def nominal_level(alpha: float = 0.025) -> SuccessLevel:
    alpha = _check_level(alpha)
    return SuccessLevel(alpha, alpha, NOMINAL)


def golden_level(alpha: float = 0.025) -> SuccessLevel:
    """Success level alpha_S = 1 - Phi(z_alpha / sqrt(phi)).

    At this level a borderline significant original study (p_o = alpha) has
    limiting relative effect size exactly 1.
    """
    alpha = _check_level(alpha)
    alpha_s = normal_sf(normal_isf(alpha) / math.sqrt(PHI))
    return SuccessLevel(alpha, alpha_s, GOLDEN, d_inf_target=1.0)


def _k_from_dinf(d_inf_target: float) -> float:
    d_inf_target = float(d_inf_target)
    if not d_inf_target > 0:
        raise DomainError(f"limiting relative effect size must be positive, got {d_inf_target!r}")
    if math.isinf(d_inf_target):
        return 1.0
    return 0.5 + math.sqrt(0.25 + 1.0 / d_inf_target ** 2)


def level_from_limiting_res(alpha: float, d_inf_target: float) -> SuccessLevel:
    """Success level at which p_o = alpha has limiting relative effect size ``d_inf_target``."""
    alpha = _check_level(alpha)
    k = _k_from_dinf(d_inf_target)
    alpha_s = normal_sf(normal_isf(alpha) / math.sqrt(k))
    return SuccessLevel(alpha, alpha_s, LIMITING_RES, d_inf_target=float(d_inf_target))


def custom_level(alpha: float, alpha_s: float) -> SuccessLevel:
    return SuccessLevel(_check_level(alpha), _check_level(alpha_s, "alpha_s"), CUSTOM)


def alpha_prime(alpha: float, d_inf_target: float) -> float:
    """Level alpha' at which ``d_inf_target`` corresponds to a limiting relative effect size of 1."""
    alpha = _check_level(alpha)
    k = _k_from_dinf(d_inf_target)
    return normal_sf(normal_isf(alpha) * math.sqrt(PHI / k))


def relative_effect_size(pair: StudyPair) -> float:
    """d = theta_r / theta_o = z_r / (z_o sqrt(c)); negative iff directions disagree."""
    if pair.z_o == 0.0:
        raise UndefinedRelativeEffectError("original estimate is exactly zero")
    return pair.z_r / (pair.z_o * math.sqrt(pair.c))


class ScepticalZ(NamedTuple):
    z2: float
    """Squared sceptical z-value z_S^2."""
    k: float
    """Companion ratio z_o^2 / z_S^2 (infinite on the boundary)."""
    boundary: bool
    """True when z_o or z_r is exactly zero and z_S^2 = 0 by continuity."""


def sceptical_z_squared(pair: StudyPair) -> ScepticalZ:
    """Solve (z_o^2/x - 1)(z_r^2/x - 1) = c for x in (0, min(z_o^2, z_r^2)).

    Equivalently the admissible root of
    (c - 1) x^2 + (z_o^2 + z_r^2) x - z_o^2 z_r^2 = 0.
    """
    zo2, zr2, c = pair.z_o ** 2, pair.z_r ** 2, pair.c
    if zo2 == 0.0 or zr2 == 0.0:
        return ScepticalZ(0.0, math.inf, True)
    b = zo2 + zr2
    prod = zo2 * zr2
    if abs(c - 1.0) < 1e-9:
        x = prod / b
    else:
        r1, r2 = solve_quadratic_stable(c - 1.0, b, -prod)
        # c > 1: roots of opposite sign, take the positive one.
        # c < 1: both positive and the larger exceeds min(z_o^2, z_r^2).
        x = r2 if c > 1.0 else r1
        # as c -> 0 the root tends to min(z_o^2, z_r^2); rounding may overshoot
        x = min(x, min(zo2, zr2))
    return ScepticalZ(x, zo2 / x, False)


def _sceptical_z(pair: StudyPair) -> float:
    p = pair.oriented()
    if p.z_r < 0:
        raise DirectionConflictError(
            "one-sided sceptical p-value undefined; replication success impossible"
        )
    return math.sqrt(sceptical_z_squared(p).z2)


def sceptical_p(pair: StudyPair) -> float:
    """One-sided sceptical p-value p_S = 1 - Phi(z_S).

    Raises
    ------
    DirectionConflictError
        If the two estimates have opposite signs.
    """
    return normal_sf(_sceptical_z(pair))


def recalibrated_sceptical_p(pair: StudyPair) -> float:
    """p_S on the ordinary p-value scale, 1 - Phi(z_S sqrt(phi)), to be compared with alpha."""
    return normal_sf(_sceptical_z(pair) * math.sqrt(PHI))


def k_factor(z_o: float, level: SuccessLevel) -> float:
    """K = z_o^2 / z_{alpha_S}^2. Replication success needs K > 1."""
    return float(z_o) ** 2 / level.z_alpha_s ** 2


def success_possible(z_o: float, level: SuccessLevel) -> bool:
    return k_factor(z_o, level) > 1.0


def z_r_min(z_o: float, c: float, level: SuccessLevel) -> float:
    """Smallest replication z-value giving success; ``math.inf`` if K <= 1."""
    k = k_factor(z_o, level)
    if k <= 1.0:
        return math.inf
    return level.z_alpha_s * math.sqrt(1.0 + c / (k - 1.0))


def d_min(z_o: float, c: float, level: SuccessLevel) -> float:
    """Smallest relative effect size giving success; ``math.inf`` if K <= 1."""
    k = k_factor(z_o, level)
    if k <= 1.0:
        return math.inf
    return math.sqrt(1.0 + c / (k - 1.0)) / math.sqrt(c * k)


def d_inf(z_o: float, level: SuccessLevel) -> float:
    """Limiting relative effect size 1 / sqrt(K (K - 1)), the c -> infinity limit of d_min."""
    k = k_factor(z_o, level)
    if k <= 1.0:
        return math.inf
    return 1.0 / math.sqrt(k * (k - 1.0))


def _near(x: float, y: float) -> bool:
    return abs(x - y) <= _ROUTE_RTOL * max(abs(x), abs(y), 1e-300)


def success_rs(pair: StudyPair, level: SuccessLevel) -> bool:
    """Replication success at ``level``.

    Evaluated three ways (p_S <= alpha_S, z_r >= z_r^min, d >= d_min), which
    must agree away from floating-point ties at the boundary.
    """
    p = pair.oriented()
    if p.z_r <= 0 or p.z_o == 0:
        return False
    z_s_level = level.z_alpha_s
    if not p.z_o > z_s_level:
        return False
    zs = math.sqrt(sceptical_z_squared(p).z2)
    by_p = zs >= z_s_level
    zmin = z_r_min(p.z_o, p.c, level)
    by_z = p.z_r >= zmin
    d = relative_effect_size(p)
    dmin = d_min(p.z_o, p.c, level)
    by_d = d >= dmin
    if not (by_p == by_z == by_d):
        if not (_near(zs, z_s_level) or _near(p.z_r, zmin) or _near(d, dmin)):
            raise ConsistencyError(
                f"success routes disagree for {pair}: p_S {by_p}, z_r {by_z}, d {by_d}"
            )
    return by_p


def success_two_trials(pair: StudyPair, alpha: float) -> bool:
    """Two-trials rule: both studies significant at one-sided level ``alpha``."""
    z_a = normal_isf(_check_level(alpha))
    p = pair.oriented()
    by_z = p.z_o >= z_a and p.z_r >= z_a
    if p.z_o == 0:
        return False
    scale = p.z_o * math.sqrt(p.c)
    by_d = p.z_o >= z_a and p.z_r / scale >= z_a / scale
    if by_z != by_d:
        raise ConsistencyError(f"two-trials routes disagree for {pair}")
    return by_z


@dataclass(frozen=True)
class AssessmentResult:
    """Every per-pair quantity of interest.

    ``p_s`` and ``p_s_tilde`` are ``None`` when the directions conflict;
    ``d_min``, ``d_inf`` and ``z_r_min`` are ``math.inf`` when success is
    impossible (K <= 1).
    """

    d: float
    shrinkage_s: float
    p_o: float
    p_r: float
    p_s: Optional[float]
    p_s_tilde: Optional[float]
    d_min: float
    d_inf: float
    z_r_min: float
    rs_success: bool
    ttr_success: bool
    discrepant: bool

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def assess(pair: StudyPair, level: SuccessLevel, alpha: Optional[float] = None) -> AssessmentResult:
    """Assess one study pair; the two-trials rule uses ``alpha`` (default ``level.alpha``)."""
    alpha = level.alpha if alpha is None else alpha
    p = pair.oriented()
    try:
        d = relative_effect_size(p)
    except UndefinedRelativeEffectError:
        d = math.nan
    try:
        zs = _sceptical_z(p)
        p_s = normal_sf(zs)
        p_s_tilde = normal_sf(zs * math.sqrt(PHI))
    except DirectionConflictError:
        p_s = p_s_tilde = None
    rs = success_rs(p, level)
    ttr = success_two_trials(p, alpha)
    return AssessmentResult(
        d=d,
        shrinkage_s=1.0 - d,
        p_o=normal_sf(p.z_o),
        p_r=normal_sf(p.z_r),
        p_s=p_s,
        p_s_tilde=p_s_tilde,
        d_min=d_min(p.z_o, p.c, level),
        d_inf=d_inf(p.z_o, level),
        z_r_min=z_r_min(p.z_o, p.c, level),
        rs_success=rs,
        ttr_success=ttr,
        discrepant=rs != ttr,
    )
