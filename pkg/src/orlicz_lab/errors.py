"""Exception hierarchy shared by all orlicz_lab modules.

Two branches matter for the CLI exit-code discipline: SpecificationError
(bad input or violated hypothesis, exit code 2) and NumericalError
(a computation that could not be completed, exit code 3).
"""


class OrliczLabError(Exception):
    """Base class for all errors raised by this package."""


class SpecificationError(OrliczLabError):
    """Invalid user input, domain violation, or unmet hypothesis."""


class ParseError(SpecificationError):
    """Malformed potential spec string."""


class DomainError(SpecificationError):
    """Parameter outside the mathematically admissible domain."""


class HypothesisError(SpecificationError):
    """A growth or kind hypothesis required by an operation is not met."""


class RangeError(SpecificationError):
    """Argument outside the validity range of a finite-n inequality."""


class NumericalError(OrliczLabError):
    """A numerical procedure failed to produce a trustworthy result."""


class TruncationError(NumericalError):
    """No truncation point exists; the potential appears bounded."""


class ConvergenceError(NumericalError):
    """Adaptive integration exhausted its subdivision budget.

    Carries the best estimate and its error bound so callers can decide
    whether the partial result is still useful.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class UnsolvableError(NumericalError):
    """Bracket expansion failed; the potential is numerically degenerate."""


class DivergenceError(NumericalError):
    """An expectation is infinite at every probed parameter value."""


class EnvelopeError(NumericalError):
    """The rejection-sampling envelope could not be constructed."""


class EfficiencyError(NumericalError):
    """Rejection sampling acceptance rate collapsed below the floor."""


class DegenerateEstimateError(NumericalError):
    """An importance-sampling denominator received zero accepted samples."""


class SingularityError(NumericalError):
    """A covariance matrix required to be invertible is singular."""
