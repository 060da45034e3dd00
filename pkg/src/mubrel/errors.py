"""Exception types shared across the package."""


class MubrelError(ValueError):
    """Invalid input to one of the package's operations."""


class CapExceeded(MubrelError):
    """Raised when an exhaustive routine would exceed its configured size cap."""


class FormatError(MubrelError):
    """A text or JSON input file could not be parsed.

    ``where`` names the offending line (``"line 3"``) or field
    (``"groups[1].table"``) so command-line users can find it.
    """

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
