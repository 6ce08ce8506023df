"""Exception types shared across the package.

``InputError`` subclasses cover anything caused by bad user input (files,
payloads, flags) and map to CLI exit code 1 / HTTP 4xx; everything else is
an internal contract violation.
"""


class DeskpulseError(Exception):
    """Base class for all package-specific errors."""


class InputError(DeskpulseError):
    """Invalid user-provided input (file contents, payloads, arguments)."""


class ParseError(InputError):
    """A file or payload could not be parsed."""

    def __init__(self, reason, path=None, line=None):
        self.reason = reason
        self.path = str(path) if path is not None else None
        self.line = line
        loc = ""
        if self.path is not None:
            loc = f"{self.path}:"
            if line is not None:
                loc += f"{line}:"
            loc += " "
        super().__init__(f"{loc}{reason}")


class OrderError(InputError):
    """Timestamps regressed within a single stream."""

    def __init__(self, reason, path=None, line=None):
        self.reason = reason
        self.path = str(path) if path is not None else None
        self.line = line
        loc = ""
        if self.path is not None:
            loc = f"{self.path}:"
            if line is not None:
                loc += f"{line}:"
            loc += " "
        super().__init__(f"{loc}{reason}")


class ValidationError(InputError):
    """A value violates a domain invariant."""


class ConfigError(ValidationError):
    """Bad key or value in a config file."""


class DegenerateFrame(ValidationError):
    """A face frame with zero cheek-to-cheek width."""


class DuplicateWord(InputError):
    """The same dictionary word/phrase is assigned to two emotions."""


class EmptySet(InputError):
    """A quote file contained no quotes."""


class ShortWindow(DeskpulseError):
    """Fewer frame results than one full window."""


class EmptyVotes(DeskpulseError):
    """Fusion called with no modality votes."""


class DuplicateModality(DeskpulseError):
    """Fusion called with two votes from the same modality."""


class CapExceeded(DeskpulseError):
    """A third state questionnaire response in a single workday."""


class EmptySession(DeskpulseError):
    """Prediction/feedback agreement requested for a session with no windows."""


class GameOver(DeskpulseError):
    """A finished game was stepped."""
