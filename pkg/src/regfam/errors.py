"""Exception types shared by all modules."""


class RegfamError(Exception):
    """Base class for errors raised by this package."""


class ParseError(RegfamError):
    """Malformed regex, graph file or word. ``pos`` is a 0-based offset when known."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class ResourceError(RegfamError):
    """A configured cap was exceeded; the answer is unknown, never wrong."""


class DimensionError(RegfamError):
    """Semilinear operands of different dimension."""


class LanguageWarning(UserWarning):
    """The input language had words outside the graph code and was cut down."""
