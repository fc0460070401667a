"""Exception types shared across the package."""


class BudgetError(Exception):
    """An operation would exceed its configured enumeration or size budget."""


class ParseError(ValueError):
    """Malformed polynomial or matrix text; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SingularMatrixError(ValueError):
    """A matrix that was required to be invertible is singular."""
