"""Exception hierarchy shared by all chaoslab modules."""


class ChaosLabError(Exception):
    """Base class for every error raised by chaoslab."""


class DomainError(ChaosLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class BlowUpError(ChaosLabError, ArithmeticError):
    """A single integration step produced a non-finite value."""

    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"non-finite state at t={t!r}")


class StepSizeUnderflow(ChaosLabError, ArithmeticError):
    """Adaptive step size fell below the configured minimum."""

    def __init__(self, t, h):
        self.t = t
        self.h = h
        super().__init__(f"step size {h!r} below minimum at t={t!r}")


class SeparationUnderflow(ChaosLabError, ArithmeticError):
    """Twin-trajectory separation collapsed to zero."""


class EstimatorRefusal(ChaosLabError, ValueError):
    """The tail sample is too small or degenerate to fit."""


class ConfigError(ChaosLabError, ValueError):
    """A run configuration is missing a field or holds an invalid value."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
