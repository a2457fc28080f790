"""Exception hierarchy shared by all quadmaps modules."""


class QuadmapError(Exception):
    """Base class for domain errors raised by quadmaps."""


class DepthExceeded(QuadmapError):
    """A quadratic tower would grow beyond the supported depth."""


class ZeroPolynomial(QuadmapError):
    """An operation received the zero polynomial where it is undefined."""


class NotDivisible(QuadmapError):
    """Exact polynomial division left a nonzero remainder."""


class SingularAffine(QuadmapError):
    """An affine map has a non-invertible linear part."""


class NotInPencil(QuadmapError):
    """The quadratic parts of the two components are independent."""


class UndefinedTest(QuadmapError):
    """A form test was consulted outside of its precondition."""


class UnknownLabel(QuadmapError):
    """An orbit label is not one of the known complex or real labels."""


class NotGenericallyFinite(QuadmapError):
    """The Jacobian vanishes identically, so fibres are not finite."""


class GenericityExhausted(QuadmapError):
    """Random genericity certification failed within the attempt cap."""


class ExtraneousFactorUnresolved(QuadmapError):
    """Elimination left a factor that the cross-checks could not remove."""


class UnsupportedOrbit(QuadmapError):
    """No constructive normal-form witness is available for this orbit."""


class MalformedFamily(QuadmapError):
    """A degeneration family is not a family of quadratic maps."""


class MalformedInput(QuadmapError):
    """User input (JSON, inline maps, coefficient strings) is malformed."""
