"""
Error Types
Exception hierarchy shared by the library and the command line
"""


class MatchingToolError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(MatchingToolError, ValueError):
    """A parameter lies outside the domain an operation is defined on."""


class FamilySyntaxError(DomainError):
    """Malformed family expression."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GraphFormatError(DomainError):
    """Malformed graph text."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CapExceededError(DomainError):
    """Request exceeds a configured enumeration or oracle cap."""


class ConstructionError(MatchingToolError):
    """A constructed object failed its own consistency check."""
