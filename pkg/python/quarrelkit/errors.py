"""Exception hierarchy shared by every quarrelkit module."""

from __future__ import annotations


class QuarrelkitError(Exception):
    """Base class for all quarrelkit errors."""


class GameInputError(QuarrelkitError, ValueError):
    """Malformed game, rule or player arguments."""


class RuleSyntaxError(GameInputError):
    """A rule string does not follow the rule grammar."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class GameFileError(GameInputError):
    """A game file could not be read or decoded."""

    def __init__(self, message: str, path: str, line: int = 0, column: int = 0):
        where = f"{path}:{line}:{column}" if line else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


class CapabilityError(QuarrelkitError):
    """The requested computation is not defined for this input."""


class NormalizationError(CapabilityError):
    """Normalized index requested for a game in which every player is a dummy."""


class ScaleError(CapabilityError):
    """Player count beyond what an exhaustive computation supports."""

    def __init__(self, what: str, requested: int, maximum: int):
        super().__init__(f"{what} supports n <= {maximum}, got n={requested}")
        self.requested = requested
        self.maximum = maximum
