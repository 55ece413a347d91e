"""Assessment and design of replication studies with the sceptical p-value.

The golden level recalibrates the sceptical p-value so that a borderline
significant original study can only be replicated successfully when the
replication estimate is at least as large as the original one.
"""

from .errors import (
    ConvergenceError,
    DirectionConflictError,
    DomainError,
    InfeasibleDesignError,
    NotSupportedError,
    ReplicationError,
)
from .sceptical import (
    PHI,
    AssessmentResult,
    StudyPair,
    SuccessLevel,
    alpha_prime,
    assess,
    custom_level,
    d_inf,
    d_min,
    golden_level,
    k_factor,
    level_from_limiting_res,
    nominal_level,
    recalibrated_sceptical_p,
    relative_effect_size,
    sceptical_p,
    sceptical_z_squared,
    success_rs,
    success_two_trials,
    z_r_min,
)

__version__ = "0.1.0"
