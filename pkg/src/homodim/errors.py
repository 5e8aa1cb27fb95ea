"""Exception taxonomy shared across the homodim modules."""


class HomodimError(Exception):
    """Base class for all homodim errors."""


class MalformedInput(HomodimError, ValueError):
    """Input file or schema violation; message carries the location."""


class InvalidSpec(HomodimError, ValueError):
    """Manifold or parameter specification outside its documented domain."""


class CapacityExceeded(HomodimError, RuntimeError):
    """A size budget was exceeded before the computation finished.

    Attributes:
        dimension: simplex dimension being expanded when the budget ran out,
            or None when the limit is not tied to a dimension.
    """

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class MissingFace(HomodimError, ValueError):
    """A face of a stored simplex is absent; the filtration is corrupt."""


class DegeneratePair(HomodimError, ValueError):
    """A tent function was requested for a pair with birth >= death."""


class DegenerateInput(HomodimError, ValueError):
    """An estimate was requested for data that carries no signal."""


class IndexOutOfRange(HomodimError, IndexError):
    """A grid index fell outside the table it addresses."""


class Overflow(HomodimError, OverflowError):
    """A quantity left the range the operation guarantees to support."""
