"""Exception hierarchy shared by every podsurge module."""


class PodsurgeError(Exception):
    """Base class for all errors raised by podsurge."""


class ShapeError(PodsurgeError, ValueError):
    """Array dimensions are inconsistent with an operation."""


class DomainError(PodsurgeError, ValueError):
    """An argument is outside the domain of an operation."""


class ConvergenceError(PodsurgeError, RuntimeError):
    """An iterative algorithm hit its iteration cap."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class TrainingError(PodsurgeError, RuntimeError):
    """Training diverged (non-finite loss)."""

    def __init__(self, message, epoch):
        super().__init__(f"{message} at epoch {epoch}")
        self.epoch = epoch


class ConfigError(PodsurgeError, ValueError):
    """An experiment configuration failed validation."""


class ArtifactError(PodsurgeError, OSError):
    """A required run artifact is missing or unreadable."""
