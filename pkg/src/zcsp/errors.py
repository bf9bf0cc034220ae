"""Exception types shared across the package."""


class ZcspError(Exception):
    """Base class for all zcsp errors."""


class GuardError(ZcspError):
    """A resource guard (domain size, arity, parameter, scan size) was exceeded."""


class ParseError(ZcspError):
    """A language/instance/graph file failed to parse; message carries the line."""
