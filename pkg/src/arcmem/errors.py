"""Exception types shared across the package."""


class ArcmemError(Exception):
    """Base class for all arcmem-specific errors."""


class NonPositiveConductance(ArcmemError):
    """The state carries g <= 0, outside the model's domain."""


class StepUnderflow(ArcmemError):
    """The required step size fell below the machine-feasible floor."""


class MaxStepsExceeded(ArcmemError):
    """The step budget was exhausted before reaching the end time."""


class NotConverged(ArcmemError):
    """Periodic settling hit the period budget with residual above tolerance.

    Carries the :class:`~arcmem.integrator.SettleReport` describing the
    failed run as the ``report`` attribute.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedThetaLaw(ArcmemError):
    """A closed form was requested for a theta law it does not cover."""


class NoCrossings(ArcmemError):
    """The current never crosses zero on the analyzed period."""


class DegenerateRange(ArcmemError):
    """The signal range is below the numeric floor for the requested metric."""


class ParseError(ArcmemError):
    """Scenario file could not be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ArcmemError):
    """A scenario or parameter invariant is violated."""
