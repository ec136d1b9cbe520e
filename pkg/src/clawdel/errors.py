"""Exception types shared across the package."""


class ClawdelError(Exception):
    """Base class for all package errors."""


class ParseError(ClawdelError):
    """Malformed input text; carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(ClawdelError):
    """Input graph violates a precondition (wrong class, bad index, ...)."""


class DecompositionError(ClawdelError):
    """A tree decomposition fails one of its validity conditions."""


class ResourceError(ClawdelError):
    """A configured node or state budget was exceeded."""
