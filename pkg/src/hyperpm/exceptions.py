"""Exception hierarchy shared by the whole package."""


class HyperPMError(Exception):
    """Base class for every error raised by :mod:`hyperpm`."""


class AutomatonError(HyperPMError, ValueError):
    """An automaton is malformed or used with an incompatible argument."""


class ArityError(AutomatonError):
    """A tuple of words does not have one entry per direction."""


class EmptyLanguageError(AutomatonError):
    """An operation needs a non-empty pattern language."""


class GuardError(HyperPMError):
    """An instance exceeds a hard size guard (oracles, determinisation)."""


class FormatError(HyperPMError, ValueError):
    """An input file could not be parsed.

    ``location`` is a human readable pointer (``path:line`` or a JSON path).
    """

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class BudgetExceeded(HyperPMError):
    """A run went past its wall-clock deadline."""
