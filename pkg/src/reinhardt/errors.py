"""Exception hierarchy shared by all modules."""


class ReinhardtError(Exception):
    """Base class for every error raised by this package."""


class DomainViolation(ReinhardtError, ValueError):
    """A point lies outside the set where an operation is defined."""


class NotInDomain(DomainViolation):
    """A point is not in D_alpha (either outside C^n(alpha) or |z^alpha| >= 1)."""

    def __init__(self, message: str, reason: str = "modulus"):
        super().__init__(message)
        # "ambient" when a zero sits at a negative exponent, "modulus" when |z^alpha| >= 1
        self.reason = reason


class InvalidExponent(ReinhardtError, ValueError):
    pass


class NotRationalType(ReinhardtError, ValueError):
    pass


class DimensionMismatch(ReinhardtError, ValueError):
    pass


class SigmaZero(ReinhardtError, ValueError):
    """mu(a) was requested at a base point with sigma(a) = 0."""


class PreconditionViolation(ReinhardtError, ValueError):
    pass


class SamplingExhausted(ReinhardtError, RuntimeError):
    pass


class ParseError(ReinhardtError, ValueError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token
