"""Exception hierarchy.

Validation failures derive from :class:`ValidationError` (a ``ValueError``)
so callers can catch bad input in one place; the CLI maps them to exit code 2.
"""


class PtDiscordError(Exception):
    pass


class ValidationError(PtDiscordError, ValueError):
    pass


class DefectError(ValidationError):
    """Validation failure carrying the measured defect."""

    def __init__(self, message, defect):
        super().__init__(f"{message} (defect {defect:.3e})")
        self.defect = float(defect)


class DimensionMismatch(ValidationError):
    pass


class NotHermitian(DefectError):
    pass


class NotUnitTrace(DefectError):
    pass


class NotPositive(DefectError):
    pass


class NonOrthonormalBasis(DefectError):
    pass


class TraceNotOne(DefectError):
    pass


class LengthMismatch(ValidationError):
    pass


class ParameterOutOfRange(ValidationError):
    pass


class EigensolverFailure(PtDiscordError, RuntimeError):
    pass
