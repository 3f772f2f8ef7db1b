"""Exception hierarchy shared across the package."""


class PremiaError(Exception):
    """Base class for all package errors."""


class DistributionError(PremiaError, ValueError):
    """A loss distribution violates its invariants."""


class SizeLimitError(DistributionError):
    """A convolution would produce more support points than allowed."""


class RangeError(PremiaError, OverflowError):
    """An exponential evaluation left the floating-point range."""


class PreconditionError(PremiaError, ValueError):
    """An operation was called outside its domain."""


class HypothesisViolation(PremiaError):
    """The market does not offer at least one full coverage for every risk."""


class StaleActionError(PremiaError):
    """An arbitrage action was computed against best quotes that have since changed."""


class ScenarioError(PremiaError, ValueError):
    """A scenario file failed validation.

    ``path`` locates the offending field, e.g. ``risks[1].points``.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)
