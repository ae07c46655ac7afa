"""Exception types shared across the package."""

from __future__ import annotations


class KripkeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModelError(KripkeError):
    """A pointed model violates a structural invariant (empty world set,
    dangling edge endpoint, valuation over unknown worlds, ...)."""


class InputError(KripkeError):
    """An operation was called with arguments outside its domain
    (unknown world, unknown modality index, malformed order list, ...)."""


class PreconditionError(KripkeError):
    """A checked precondition failed.  ``clause`` names the failed condition."""

    def __init__(self, clause: str, message: str | None = None):
        super().__init__(message or clause)
        self.clause = clause


class NoCandidateError(KripkeError):
    """A least-representative lookup found no candidate.  This signals misuse:
    every world of non-negative bound has a representative at levels up to its
    bound, so an empty candidate set means the requested level was too high or
    the world is outside the representative machinery."""


class BudgetExceededError(KripkeError):
    """An enumeration (formula space or candidate-model space) exceeded its
    configured budget and was aborted."""


class ParseError(KripkeError):
    """A textual document (model or formula) could not be parsed.

    ``location`` identifies where: a ``line:column`` pair for lexical errors
    or a field path such as ``worlds[2].id`` for structural ones.
    """

    def __init__(self, message: str, location: str | None = None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class UnknownReferenceError(ParseError):
    """A document refers to a world identifier that is not declared."""
