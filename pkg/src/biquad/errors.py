"""Exception hierarchy shared across the package."""


class BiquadError(Exception):
    """Base class for all errors raised by :mod:`biquad`."""


class DimensionMismatchError(BiquadError, ValueError):
    pass


class NonFiniteEntryError(BiquadError, ValueError):
    pass


class IndexOutOfRangeError(BiquadError, IndexError):
    pass


class NotNonnegativeError(BiquadError, ValueError):
    """The tensor (or a vector argument) has a negative entry."""


class ZeroVectorError(BiquadError, ValueError):
    pass


class DegeneratePointError(BiquadError, ValueError):
    """Some pair (x_i, g_i) or (y_j, h_j) vanishes simultaneously."""


class InvalidStartError(BiquadError, ValueError):
    pass


class ParseError(BiquadError, ValueError):
    pass


class NonSymmetricFactorError(BiquadError, ValueError):
    pass


class InternalConsistencyError(BiquadError, RuntimeError):
    """Two independent computations that must agree did not."""
