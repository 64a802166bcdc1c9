"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RevConcError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(RevConcError, ValueError):
    """An argument lies outside the structure it is queried against."""


class DomainError(RevConcError, ValueError):
    """An operation was applied outside its domain of definition.

    Typical causes: residuating by a set that is not a configuration, or
    building an event structure from an unstable configuration structure.
    The optional ``report`` carries the diagnostic that justified the refusal.
    """

    def __init__(self, message: str, report: object = None):
        super().__init__(message)
        self.report = report


class IntegrityError(RevConcError):
    """A result contradicts a property that must hold if inputs are valid."""


class ResourceError(RevConcError):
    """A size cap was exceeded."""


class UsageError(RevConcError, ValueError):
    """Unknown identifier or inconsistent generator options."""


class ParseError(RevConcError, ValueError):
    """Malformed serialized input."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class InvalidStructure(RevConcError, ValueError):
    """A structure violates one or more of its invariants."""

    def __init__(self, message: str, violations: list | tuple = ()):
        detail = "; ".join(str(v) for v in violations)
        super().__init__(f"{message}: {detail}" if detail else message)
        self.violations = list(violations)
