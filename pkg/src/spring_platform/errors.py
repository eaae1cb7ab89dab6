"""Exception and warning types shared across the package."""


class MechanismError(Exception):
    """Base class for all solver errors."""


class ParallelLines(MechanismError):
    """Two lines have no (finite) intersection point."""


class OriginOnPlane(MechanismError):
    """Side classification relative to the origin is undefined."""


class NotAssemblable(MechanismError):
    """The free-length circle constructions admit no real intersection."""


class ZeroLengthSpring(MechanismError):
    """A spring has (numerically) zero length, so its direction is undefined."""


class NonZeroFreeLength(MechanismError):
    """Operation requires all spring free lengths to be zero."""


class WrongFreeLengthPattern(MechanismError):
    """Operation requires exactly one nonzero free length, on spring 1."""


class DegenerateQuartic(MechanismError):
    """The eliminated polynomial is identically zero; no roots recoverable."""


class ZeroPolynomial(MechanismError):
    """All polynomial coefficients are (numerically) zero."""


class NonConvergence(MechanismError):
    """Root iteration finished without meeting the residual bound."""


class InterpolationMismatch(MechanismError):
    """Held-out validation of an interpolated determinant failed."""


class ProbeSingularity(MechanismError):
    """Coefficient probing hit an ill-conditioned node set twice."""


class ParseError(MechanismError):
    """Config file is not parseable."""


class ValidationError(MechanismError):
    """Config content is invalid; carries the offending field name."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class UnsupportedFreeLengthPattern(ValidationError):
    """Free-length pattern fits neither supported solver case."""

    def __init__(self, field: str = "L0"):
        super().__init__(field, "unsupported free-length pattern "
                                "(need all zero, or only L01 nonzero)")


class AnalysisError(MechanismError):
    """Pipeline failure wrapped with the name of the failing stage."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


class DegreeMismatch(UserWarning):
    """Pole deflation did not land on the expected polynomial degree."""


class InterpolationNoise(UserWarning):
    """Held-out validation passed structurally but above the target
    accuracy; the interpolated coefficients carry extra sampling noise."""


class IllConditionedBackSub(UserWarning):
    """Linear back-substitution was unreliable; fallback value used."""
