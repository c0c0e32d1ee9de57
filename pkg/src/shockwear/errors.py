"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Raised when a run configuration is missing fields or violates an invariant."""


class StepSizeError(RuntimeError):
    """Raised when the shock intensity is too high for the chosen time step.

    Carries ``suggested_dt``, an upper bound on dt that would satisfy the guard
    for the intensity observed when the error was raised.
    """

    def __init__(self, message, suggested_dt=None):
        super().__init__(message)
        self.suggested_dt = suggested_dt


class IntegrationError(RuntimeError):
    """Adaptive quadrature failed to converge. ``best_estimate`` holds the last value."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class UnsupportedConfigError(ValueError):
    """Raised when the semi-analytic reliability path is asked to handle a
    configuration it deliberately refuses (coupled shock/wear feedback)."""
