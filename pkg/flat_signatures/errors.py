class SignatureError(ValueError):
    """Base class for every failure raised by flat_signatures."""


# core-group
class AmbiguousTrace(SignatureError):
    """Numeric trace inside the classification band with no exact annotation."""


class NotElliptic(SignatureError):
    pass


# cover-lift
class RefinementUnstable(SignatureError):
    """Two path-subdivision levels disagree on a lifted circle value."""


class NonIntegerCocycle(SignatureError):
    pass


class EllipticBoundary(SignatureError):
    pass


class NonCentralProduct(SignatureError):
    """The lifted relator does not project to +-I."""


# invariants
class IntegralityFailure(SignatureError):
    pass


class UnsupportedSurface(SignatureError):
    pass


# surfaces
class InvalidSurface(SignatureError):
    pass


class HolonomyMismatch(SignatureError):
    """Generator images do not satisfy the relator, or glued boundaries do not match."""


class NonStandardIndex(SignatureError):
    pass


# constructions
class UnachievableValue(SignatureError):
    pass


class PlanIncomplete(SignatureError):
    """The value is admitted by the closed form but no constructive route reaches it."""


class ParameterOutOfRange(SignatureError):
    pass


class OutOfFamilyRange(SignatureError):
    pass


# oracle
class RealificationUnsupported(SignatureError):
    pass


class IllConditioned(SignatureError):
    """Eigenvalues too close to the rank cutoff to count signs reliably."""


class ComplexInconsistent(SignatureError):
    pass


# certificates / cli
class VerificationFailure(SignatureError):
    pass
