"""Exception hierarchy shared by the engines, optimizer and runner."""


class QheError(Exception):
    """Base class for all package errors."""


class DomainError(QheError, ValueError):
    """An argument lies outside the domain of a physical or special function."""


class SingularGenerator(QheError, ArithmeticError):
    """The steady-state system has no unique solution."""


class StepTooLarge(QheError, ValueError):
    """RK4 step violates the stability guard ``dt <= 0.1 / ||L||``."""


class UndefinedObservable(QheError, ArithmeticError):
    pass


class EfficiencyUndefined(UndefinedObservable):
    """Hot heat flux vanishes, so -P/Q_h has no value."""


class XiUndefined(UndefinedObservable):
    """Denominator of the coherence asymmetry factor vanishes."""


class NoOperatingPoint(QheError):
    """Output power is non-positive over the whole search interval.

    ``result`` carries the best (non-converged) point found, if any.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class SweepPointError(QheError):
    """A sweep point failed numerically; records where.

    ``tau`` and ``override`` identify the row, ``cause`` is the original
    exception.
    """

    def __init__(self, tau, override, cause):
        super().__init__(f"tau={tau!r} override={dict(override)!r}: "
                         f"{type(cause).__name__}: {cause}")
        self.tau = tau
        self.override = dict(override)
        self.cause = cause
