"""Shared exception types.

Every solver in this package is an oracle of some kind: it must either
return a correct answer or fail loudly.  Nothing here ever degrades to a
guess, so budget overruns and malformed inputs get their own exception
types that callers (and the command line driver) can tell apart.
"""


class ResourceBudgetError(RuntimeError):
    """A computation exceeded its declared search budget.

    ``best_known`` optionally carries the tightest enclosure or partial
    result obtained before the budget ran out.
    """

    def __init__(self, message, best_known=None):
        super().__init__(message)
        self.best_known = best_known


class PreconditionError(ValueError):
    """An input violates a documented precondition of an operation."""


class ParseError(ValueError):
    """Rejected input text, with a position when one is known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
