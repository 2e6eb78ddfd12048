"""Exception hierarchy shared by every module of the package."""


class WeightedSAWError(Exception):
    """Base class for all package errors."""


class InvalidHomomorphism(WeightedSAWError):
    pass


class WordOverflow(WeightedSAWError):
    """A free-group word exceeded the configured maximum length."""


class AsymmetricWeight(WeightedSAWError):
    pass


class EmptySupport(WeightedSAWError):
    pass


class UnboundedComparison(WeightedSAWError):
    """A distance was requested between weights with infinite untruncated support."""


class NotAHeightFunction(WeightedSAWError):
    def __init__(self, clause, message):
        super().__init__(f"clause ({clause}): {message}")
        self.clause = clause


class SearchExhausted(WeightedSAWError):
    pass


class InfiniteStepSet(WeightedSAWError):
    pass


class BudgetOverflow(WeightedSAWError):
    pass


class NotContinuousAtZero(WeightedSAWError):
    pass


class InsufficientData(WeightedSAWError):
    pass


class NotHalfSpace(WeightedSAWError):
    pass


class SurgeryCollision(WeightedSAWError):
    """The surgered walk revisits a vertex."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class ConfigMismatch(WeightedSAWError):
    pass


class DeltaTooLarge(WeightedSAWError):
    pass


class ConfigError(WeightedSAWError):
    """Base for configuration problems; carries a list of located messages."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class ParseError(ConfigError):
    pass


class SchemaError(ConfigError):
    pass


class CacheCorruption(WeightedSAWError):
    pass
