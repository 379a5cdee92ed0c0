"""Exception hierarchy shared by all modules."""


class PlaneAutError(Exception):
    """Base class for every error raised by this package."""


class ZeroInversion(PlaneAutError, ZeroDivisionError):
    pass


class FieldMismatch(PlaneAutError, ValueError):
    pass


class DegreeLimitExceeded(PlaneAutError):
    pass


class ZeroPolynomial(PlaneAutError, ValueError):
    pass


class DegreeTooHigh(PlaneAutError, ValueError):
    pass


class LengthMismatch(PlaneAutError, ValueError):
    pass


class ParseError(PlaneAutError, ValueError):
    pass


class NotAutomorphism(PlaneAutError):
    """A well-formed negative verdict: the input is not an automorphism."""


class NotTriangular(PlaneAutError, ValueError):
    pass


class SingularAffine(PlaneAutError, ValueError):
    pass


class ConstraintViolation(PlaneAutError, ValueError):
    pass


class DegreeMismatch(PlaneAutError, ValueError):
    pass


class BudgetExceeded(PlaneAutError):
    pass


class InternalInvariant(PlaneAutError, AssertionError):
    """Raised when a result breaks an invariant that should be unreachable."""
