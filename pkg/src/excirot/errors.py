"""Exception types raised by excirot."""


class ExcirotError(Exception):
    """Base class for all package errors."""


class PoleError(ExcirotError, ValueError):
    """Argument sits on a pole of the Gamma function."""


class DomainError(ExcirotError, ValueError):
    """Argument outside the domain where a formula is valid."""


class DegenerateError(ExcirotError, ArithmeticError):
    """The exciton subspace is (numerically) empty."""


class ToleranceError(ExcirotError, RuntimeError):
    """Adaptive integration could not meet the requested tolerance."""


class NormError(ExcirotError, RuntimeError):
    """Numerical propagation drifted away from unit norm."""


class MissingBaselineError(ExcirotError, ValueError):
    """A delay series has no negative-delay points to normalize by."""


class InfeasibleError(ExcirotError, ValueError):
    """Requested rotation angle exceeds what the pulse can reach."""

    def __init__(self, message, theta_max):
        super().__init__(message)
        self.theta_max = theta_max


class NonConvergenceError(ExcirotError, RuntimeError):
    """Iterative solver ran out of iterations."""


class ConfigError(ExcirotError, ValueError):
    """Malformed or inconsistent run configuration."""
