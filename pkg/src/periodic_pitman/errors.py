"""Exception types shared across the package."""


class PitmanError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(PitmanError, ValueError):
    """Input values violate a documented constraint (non-finite, bad shape, bad parameter)."""


class OutOfWindowError(PitmanError, IndexError):
    """An operation tried to read or write a column outside the stored window."""


class PreconditionError(PitmanError):
    """A theorem hypothesis needed by a check does not hold for the given instance."""


class ResourceLimitError(PitmanError):
    """An enumeration or instance exceeds a configured size cap."""


class NumericFailureError(PitmanError, ArithmeticError):
    """Floating point arithmetic produced a singular or non-finite result."""


class ParseError(PitmanError, ValueError):
    """A serialized instance does not match the expected schema."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
