"""Exception types for artintool."""


class ArtinError(ValueError):
    """Base class for every error raised by artintool."""


class PresentationError(ArtinError):
    """A presentation or map file is malformed or inconsistent."""


class UnknownGeneratorError(ArtinError):
    """A word or subset mentions a generator the presentation does not have."""


class PresentationMismatchError(ArtinError):
    """Two operands live in different presentations."""


class NotSphericalError(ArtinError):
    """An operation needs a spherical subset (finite Coxeter group)."""


class NotFCError(ArtinError):
    """An operation needs a presentation of FC type."""


class UnverifiedMapError(ArtinError):
    """A generator map was used as a morphism although its axioms fail."""


class BallTooSmallError(ArtinError):
    """The explored ball of the Deligne complex does not contain the answer."""


class UnsupportedMembershipError(ArtinError):
    """Parabolic membership could not be decided with the available splittings."""


class InternalCheckError(ArtinError):
    """A theorem-backed internal assertion failed."""
