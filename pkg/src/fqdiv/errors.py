"""Exception hierarchy shared by all modules."""


class FqDivError(Exception):
    """Base class for library errors."""


class InvalidArgument(FqDivError, ValueError):
    pass


class PrecisionExhausted(FqDivError, ArithmeticError):
    """A series result is not determined at the working precision."""


class ResourceExhausted(FqDivError, MemoryError):
    """A search exceeded its configured memory budget.

    ``radius`` holds the last radius that was fully explored.
    """

    def __init__(self, message, radius=None):
        super().__init__(message)
        self.radius = radius


class ConstructionFailure(FqDivError, RuntimeError):
    """A constructive step could not produce a certified result.

    ``stage`` names the failing step so callers can report it.
    """

    def __init__(self, message, stage=None, **info):
        super().__init__(message if stage is None else f'[{stage}] {message}')
        self.stage = stage
        self.info = info


class PreconditionError(FqDivError, ValueError):
    pass


class OutOfRange(FqDivError, ValueError):
    """An input lies outside a precomputed finite region (e.g. a BFS ball)."""
