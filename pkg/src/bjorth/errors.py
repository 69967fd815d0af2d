"""Exception types shared across the package."""


class BjorthError(Exception):
    """Base class for every package-specific error."""


class InvalidExponent(BjorthError):
    """Norm exponent is not a finite real greater than 1."""


class BadDimension(BjorthError):
    """Declared ambient dimension is not a positive integer."""


class EmptySum(BjorthError):
    """A max-sum space needs at least two parts."""


class DimensionMismatch(BjorthError):
    """Vector or functional length does not match the ambient dimension."""


class ZeroVector(BjorthError):
    """Operation requires a nonzero vector."""


class ZeroDirection(BjorthError):
    """Line minimization requires a nonzero direction."""


class NotAPlane(BjorthError):
    """Operation requires a two-dimensional space."""


class NotSmooth(BjorthError):
    """Support set is not a singleton where a unique functional is required."""


class NotRadonPlane(BjorthError):
    """Construction requires a smooth Radon plane."""


class NoBracket(BjorthError):
    """Root bracketing failed; the smooth-Radon-plane premise is violated."""


class GridTooCoarse(BjorthError):
    """Angle grid is below the minimum resolution."""


class MonotonicityViolation(BjorthError):
    """Tabulated pairing angles are not strictly increasing."""


class NonConvergence(BjorthError):
    """Iterative solve failed to converge."""


class EmptyParts(BjorthError):
    """Componentwise map composition needs at least two parts."""


class DegenerateSection(BjorthError):
    """Section basis is (numerically) linearly dependent."""


class ParseError(BjorthError):
    """Malformed space descriptor."""
