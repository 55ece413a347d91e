"""Exception hierarchy shared across the package."""


class ReplicationError(Exception):
    """Base class for all errors raised by repsuccess."""


class DomainError(ReplicationError, ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(ReplicationError, ArithmeticError):
    """An iterative method did not reach its tolerance.

    The best estimate obtained so far is kept on ``best_estimate`` (and the
    associated error estimate, when there is one, on ``abs_error_estimate``).
    """

    def __init__(self, message, best_estimate=None, abs_error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error_estimate = abs_error_estimate


class BracketError(ReplicationError, ValueError):
    """The supplied interval does not bracket a sign change."""


class NoRealRootError(ReplicationError, ValueError):
    """A quadratic has a negative discriminant."""


class UndefinedRelativeEffectError(DomainError):
    """The original estimate is exactly zero, so d = theta_r / theta_o is undefined."""


class DirectionConflictError(ReplicationError):
    """Original and replication estimates point in opposite directions.

    The one-sided sceptical p-value is undefined and replication success is
    impossible.
    """


class NotSupportedError(ReplicationError, ValueError):
    """The requested combination of options has no defined meaning."""


class InfeasibleDesignError(ReplicationError, ValueError):
    """No finite relative sample size achieves the requested target."""


class ConsistencyError(ReplicationError, AssertionError):
    """Equivalent computational routes disagreed."""
