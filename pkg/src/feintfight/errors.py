"""Exception types shared across the package."""


class FeintFightError(Exception):
    """Base class for all package errors."""


class ConfigError(FeintFightError):
    """A config invariant was violated; `field` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"invalid config field {field!r}: {message}")
        self.field = field


class AdvanceAfterTerminal(FeintFightError):
    """advance() was called on a finished session."""


class UnknownProfileError(FeintFightError):
    """Requested agent profile does not exist."""


class ProfileFormatError(FeintFightError):
    """Profile file is malformed or contains unknown fields."""


class MalformedLogError(FeintFightError):
    """Event log file violates the log schema."""


class InsufficientSamplesError(FeintFightError):
    """Statistical operation needs more samples than were provided."""
