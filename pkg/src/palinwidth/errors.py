"""Exception types shared by the library and the CLI."""


class PalinwidthError(Exception):
    """Base class for all library errors."""


class ParseError(PalinwidthError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class CapacityError(PalinwidthError):
    """Raised when group enumeration would exceed the configured element cap."""

    def __init__(self, partial_count, max_order):
        self.partial_count = partial_count
        self.max_order = max_order
        super().__init__(
            f"group order exceeds max_order={max_order} "
            f"({partial_count} elements enumerated before abort)"
        )


class NotASubgroupError(PalinwidthError, ValueError):
    pass


class TableMismatchError(PalinwidthError, ValueError):
    pass


class InapplicableError(PalinwidthError, ValueError):
    """A construction's preconditions do not hold for the given input."""


class InvariantViolation(PalinwidthError, AssertionError):
    """An internal check that a proven statement guarantees has failed."""
