"""Exception types shared across the package."""


class OrdinaryCirclesError(Exception):
    """Base class for all package-specific errors."""


class DivisionNearZero(OrdinaryCirclesError):
    """A quotient denominator could not be certified nonzero below the precision cap."""


class NegativeSqrt(OrdinaryCirclesError):
    """A square-root argument was certified negative."""


class PrecisionExhausted(OrdinaryCirclesError):
    """The sign of an expression could not be decided: the interval still
    straddles zero at the precision cap and no symbolic-zero rule applies."""


class PredicateUndecided(OrdinaryCirclesError):
    """A geometric predicate could not be decided (propagated PrecisionExhausted)."""


class CenterInversion(OrdinaryCirclesError):
    """Attempted to invert the centre of the inversion itself."""


class DegenerateTriple(OrdinaryCirclesError):
    """Two of the three points defining a circle coincide."""


class DuplicatePoints(OrdinaryCirclesError):
    """A point set contains coincident points."""


class InvalidParameters(OrdinaryCirclesError):
    """Construction parameters outside their documented domain."""


class UnsupportedDegree(OrdinaryCirclesError):
    """Curve degree outside the supported range of an operation."""


class CaseMismatch(OrdinaryCirclesError):
    """The classified inverse curve does not match the predicted case label."""


class GroupGeometryMismatch(OrdinaryCirclesError):
    """A group-law concyclicity criterion disagrees with the geometric predicate."""


class IrrationalSingularity(OrdinaryCirclesError):
    """The singular locus has no rational representative."""


class LineInCurve(OrdinaryCirclesError):
    """A chord lies entirely inside the cubic (reducible host)."""


class SingularHit(OrdinaryCirclesError):
    """A chord-tangent step landed on the singular point of the host."""


class ToleranceExceeded(OrdinaryCirclesError):
    """A numeric parametrization check exceeded its stated tolerance."""


class HostUnsupported(OrdinaryCirclesError):
    """The requested coset variant is not available on this host."""


class NoWitnessKnown(OrdinaryCirclesError):
    """No extremal witness construction is known for these parameters."""
