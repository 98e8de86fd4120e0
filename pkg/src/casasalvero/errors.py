"""Shared exception types."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UnsupportedFieldError(TypeError):
    """Operation not defined over the given coefficient ring."""


class NormalizationError(ValueError):
    """A polynomial cannot be brought to the monic, zero-constant form."""


class BudgetExceededError(RuntimeError):
    """A computation was refused because it would exceed its resource budget.

    Carries `required` (an estimate of the work needed) and `budget` so the
    caller can report a useful diagnostic.
    """

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class PolyParseError(ValueError):
    """Syntax error in a polynomial text, with the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
