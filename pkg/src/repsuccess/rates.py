"""Overall Type-I error rate and project power over both studies.

Both quantities integrate the conditional success probability
P(z_r >= z_r^min | z_o) against the sampling density of z_o, standard normal
under the null and N(mu, 1) under the design alternative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numkernel import integrate, normal_cdf, normal_isf, normal_pdf, normal_sf
from .sceptical import SuccessLevel, _check_level, z_r_min

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"

# integrands are Gaussian in z_o; 8.5 standard deviations leave a tail below 1e-16
TAIL_SD = 8.5


@dataclass(frozen=True)
class RateResult:
    value: float
    abs_error_estimate: float
    method_tag: str


@dataclass(frozen=True)
class ProjectPowerSpec:
    """Design alternative for the project: the original study has power 1 - beta at level alpha."""

    alpha: float
    beta: float
    c: float
    level: SuccessLevel
    restrict_to_significant: bool = False

    def __post_init__(self):
        _check_level(self.alpha)
        if not (0.0 < self.beta < 1.0):
            raise DomainError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"c must be positive and finite, got {self.c!r}")
        if not self.mu > 0:
            raise DomainError("alternative mean z_alpha + z_beta must be positive")

    @property
    def mu(self) -> float:
        return normal_isf(self.alpha) + normal_isf(self.beta)


def t1e_closed_c1(level: SuccessLevel) -> RateResult:
    """Type-I error at c = 1: {1 - Phi[2 z_{alpha_S}]} / 2.

    At c = 1, z_S^2 is half the harmonic mean of z_o^2 and z_r^2, which links
    it to a chi-squared(1) statistic.
    """
    return RateResult(normal_sf(2.0 * level.z_alpha_s) / 2.0, 0.0, CLOSED_FORM)


def _success_integral(c: float, level: SuccessLevel, mu: float, lower: float) -> RateResult:
    shift = math.sqrt(c) * mu
    upper = max(level.z_alpha_s, mu, lower) + TAIL_SD

    def integrand(z_o: float) -> float:
        zmin = z_r_min(z_o, c, level)
        if math.isinf(zmin):
            return 0.0
        return normal_sf(zmin - shift) * normal_pdf(z_o - mu)

    res = integrate(integrand, lower, upper)
    return RateResult(res.value, res.abs_error_estimate + normal_sf(upper - mu), QUADRATURE)


def t1e_quadrature(c: float, level: SuccessLevel) -> RateResult:
    """Type-I error at relative sample size ``c`` by numerical integration over z_o."""
    if not (c > 0 and math.isfinite(c)):
        raise DomainError(f"c must be positive and finite, got {c!r}")
    return _success_integral(float(c), level, 0.0, level.z_alpha_s)


def t1e_two_trials(alpha: float) -> RateResult:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    return RateResult(alpha * alpha, 0.0, CLOSED_FORM)


def project_power_rs(spec: ProjectPowerSpec) -> RateResult:
    """Joint probability that both studies together achieve replication success.

    With ``restrict_to_significant`` the integral starts at z_alpha instead of
    z_{alpha_S}, i.e. only originals with p_o <= alpha count. The result is
    still a joint probability, not one conditional on original significance.
    """
    lower = spec.level.z_alpha_s
    if spec.restrict_to_significant:
        lower = max(lower, normal_isf(spec.alpha))
    return _success_integral(spec.c, spec.level, spec.mu, lower)


def project_power_two_trials(spec: ProjectPowerSpec) -> RateResult:
    """(1 - beta) Phi(sqrt(c) mu - z_alpha)."""
    # sqrt(c) mu - z_alpha written so that it is exactly z_beta at c = 1
    z_a, z_b = normal_isf(spec.alpha), normal_isf(spec.beta)
    root_c = math.sqrt(spec.c)
    value = (1.0 - spec.beta) * normal_cdf(root_c * z_b + (root_c - 1.0) * z_a)
    return RateResult(value, 0.0, CLOSED_FORM)
