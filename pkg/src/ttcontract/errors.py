"""Exception types. All derive from ValueError so callers can catch broadly."""


class TensorError(ValueError):
    pass


class ShapeError(TensorError):
    """Malformed shape, permutation or element count."""


class DimensionMismatchError(TensorError):
    """Two operands disagree on a dimension that must match."""


class IndexOutOfBoundsError(TensorError, IndexError):
    pass


class FormatError(TensorError):
    """A TT1/TTD1 file could not be parsed."""


class NumericalError(TensorError):
    """Non-finite input or a factorization that failed to converge."""
