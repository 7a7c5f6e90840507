"""Exception types raised across the package."""


class SpechomError(Exception):
    """Base class for all package errors."""


class ValidationError(SpechomError, ValueError):
    """Invalid input data or parameters."""


class ParseError(SpechomError, ValueError):
    """Malformed input file."""


class ResourceError(SpechomError, RuntimeError):
    """A computation would exceed a hard size limit."""
