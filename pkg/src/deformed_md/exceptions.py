"""Exception hierarchy shared by every module of the package."""


class DeformedMDError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DeformedMDError, ValueError):
    """An argument lies outside the domain of the requested function."""


class InvalidParams(DeformedMDError, ValueError):
    """Hyperparameters of a link family or problem violate their constraints."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class LengthMismatch(DeformedMDError, ValueError):
    pass


class BracketError(DeformedMDError, ValueError):
    """Target value is outside the range a monotone inversion can reach."""


class NoConvergence(DeformedMDError, RuntimeError):
    pass


class QuadratureFailure(DeformedMDError, RuntimeError):
    pass


class StepFailure(DeformedMDError, RuntimeError):
    """An optimizer step could not be computed, even after step-size halving."""


class DegenerateState(DeformedMDError, RuntimeError):
    """Every coordinate of a mirror-less step was clipped to zero."""
