"""Exception types shared across the package."""


class JacquetError(Exception):
    """Base class for all domain errors raised by this package."""


class SegmentError(JacquetError):
    """Invalid segment bounds (mixed parity, or b < a - 1)."""


class KindMismatchError(JacquetError):
    """Formal sums over different monomial kinds (or tensor arities) were combined."""


class ShapeError(JacquetError):
    """A parabolic shape does not fit the representation it is applied to."""


class TermLimitError(JacquetError):
    """A formal sum exceeded the JACQUET_MAX_TERMS cap."""


class LabelConflictError(JacquetError):
    """A label name was redeclared with conflicting attributes."""


class UnknownLabelError(JacquetError):
    """A label name does not resolve against the active declarations."""


class InvalidParamsError(JacquetError):
    """Geometric parameters (n, i1, i2, d, k) violate their admissibility constraints."""


class NonBijectionError(JacquetError):
    """The piecewise permutation branches failed to assemble a bijection.

    This is a loud safety net: it should be unreachable for admissible
    parameters, and if it ever fires the offending parameters are reported
    rather than silently repaired.
    """


class LeviActionError(JacquetError):
    """A signed permutation is incompatible with the block structure it is applied to."""


class BruteForceBoundError(JacquetError):
    """The exhaustive Weyl-group search was asked to exceed its configured rank bound."""


class InvalidDatumError(JacquetError):
    """A Jordan-block datum violates the classification conditions."""


class UndeclaredReducibilityError(JacquetError):
    """A cuspidal pair has no declared reducibility point."""


class ExpressionError(JacquetError):
    """Syntax or resolution error in the expression mini-language."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class TwistFixednessWarning(UserWarning):
    """A label used in classification data has no declared twist-fixedness."""
