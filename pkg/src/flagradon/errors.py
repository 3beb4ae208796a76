"""Exception types raised by the engine."""


class FlagRadonError(Exception):
    """Base class for all engine errors."""


class InvalidCartanType(FlagRadonError, ValueError):
    pass


class DimensionMismatch(FlagRadonError, ValueError):
    pass


class UnsupportedFamily(FlagRadonError, ValueError):
    pass


class InvalidSpec(FlagRadonError, ValueError):
    pass


class NotDominant(FlagRadonError, ValueError):
    pass


class NotNested(FlagRadonError, ValueError):
    pass


class NoExtremalPair(FlagRadonError):
    pass


class BudgetExceeded(FlagRadonError):
    """Raised when an enumeration would exceed the element budget.

    ``count`` is the number of elements produced before giving up.
    """

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count = count


class ConsistencyError(FlagRadonError, RuntimeError):
    """Two independent computations of the same quantity disagreed."""
