"""Exception types. Each mixes in a builtin so callers that do not know
this package can still catch something sensible."""


class NnvalidateError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(NnvalidateError, ValueError):
    """Tensor halves or batches do not line up."""


class InvalidWidth(NnvalidateError, ValueError):
    """A layer width violates the architecture constraints."""


class MalformedInput(NnvalidateError, ValueError):
    """An input file does not follow the documented schema."""
