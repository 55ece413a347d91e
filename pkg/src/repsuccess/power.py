"""Conditional and predictive power of a planned replication.

Power is computed given the original result. Conditional power treats the
(optionally shrunken) original estimate as the true effect; predictive power
averages over its sampling uncertainty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotSupportedError
from .numkernel import normal_cdf, normal_isf
from .sceptical import SuccessLevel, d_min, golden_level

CONDITIONAL = "conditional"
PREDICTIVE = "predictive"
REPLICATION_SUCCESS = "replication-success"
TWO_TRIALS = "two-trials"


@dataclass(frozen=True)
class PowerSpec:
    """Inputs for a power calculation.

    ``shrinkage`` is the fraction s of the original estimate assumed to be
    inflation, so the effect used for planning is (1 - s) * theta_o.
    The two-trials rule uses ``level.alpha``.
    """

    z_o: float
    c: float
    level: SuccessLevel
    shrinkage: float = 0.0
    mode: str = CONDITIONAL
    method: str = REPLICATION_SUCCESS

    def __post_init__(self):
        object.__setattr__(self, "z_o", abs(float(self.z_o)))
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"c must be positive and finite, got {self.c!r}")
        if not (0.0 <= self.shrinkage < 1.0):
            raise DomainError(f"shrinkage must lie in [0, 1), got {self.shrinkage!r}")
        if self.mode not in (CONDITIONAL, PREDICTIVE):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.method not in (REPLICATION_SUCCESS, TWO_TRIALS):
            raise DomainError(f"unknown method {self.method!r}")
        if self.mode == PREDICTIVE and self.shrinkage != 0.0:
            raise NotSupportedError("predictive power is only defined without shrinkage")

    @classmethod
    def from_p(cls, p_o: float, c: float, level: SuccessLevel | None = None, **kwargs) -> "PowerSpec":
        return cls(normal_isf(p_o), c, level or golden_level(), **kwargs)


def _require(spec: PowerSpec, mode: str, method: str) -> None:
    if spec.mode != mode or spec.method != method:
        raise DomainError(f"spec has mode={spec.mode!r}, method={spec.method!r}; expected {mode!r}, {method!r}")


def power_rs_conditional(spec: PowerSpec) -> float:
    """Phi[sqrt(c) z_o (1 - s - d_min)], or 0 when success is impossible."""
    _require(spec, CONDITIONAL, REPLICATION_SUCCESS)
    dmin = d_min(spec.z_o, spec.c, spec.level)
    if math.isinf(dmin):
        return 0.0
    return normal_cdf(math.sqrt(spec.c) * spec.z_o * (1.0 - spec.shrinkage - dmin))


def power_rs_predictive(spec: PowerSpec) -> float:
    """Phi[z_o (1 - d_min) / sqrt(1 + 1/c)], using d | theta_o ~ N(1, (1 + 1/c) / z_o^2)."""
    _require(spec, PREDICTIVE, REPLICATION_SUCCESS)
    dmin = d_min(spec.z_o, spec.c, spec.level)
    if math.isinf(dmin):
        return 0.0
    return normal_cdf(spec.z_o * (1.0 - dmin) / math.sqrt(1.0 + 1.0 / spec.c))


def power_2tr_conditional(spec: PowerSpec) -> float:
    _require(spec, CONDITIONAL, TWO_TRIALS)
    z_a = spec.level.z_alpha
    if spec.z_o < z_a:
        return 0.0
    return normal_cdf(math.sqrt(spec.c) * (1.0 - spec.shrinkage) * spec.z_o - z_a)


def power_2tr_predictive(spec: PowerSpec) -> float:
    # z_r | z_o ~ N(sqrt(c) z_o, 1 + c) once theta ~ N(theta_o, sigma_o^2) is integrated out
    _require(spec, PREDICTIVE, TWO_TRIALS)
    z_a = spec.level.z_alpha
    if spec.z_o < z_a:
        return 0.0
    return normal_cdf((math.sqrt(spec.c) * spec.z_o - z_a) / math.sqrt(1.0 + spec.c))


def power(spec: PowerSpec) -> float:
    """Dispatch on ``spec.mode`` and ``spec.method``."""
    table = {
        (CONDITIONAL, REPLICATION_SUCCESS): power_rs_conditional,
        (PREDICTIVE, REPLICATION_SUCCESS): power_rs_predictive,
        (CONDITIONAL, TWO_TRIALS): power_2tr_conditional,
        (PREDICTIVE, TWO_TRIALS): power_2tr_predictive,
    }
    return table[spec.mode, spec.method](spec)
