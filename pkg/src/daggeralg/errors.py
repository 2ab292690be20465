"""Exception and warning types raised across the package."""


class DaggerError(Exception):
    """Base class; ``kind`` is the machine-readable tag used in CLI reports."""

    kind = "error"


class ContextMismatchError(DaggerError):
    kind = "context-mismatch"


class UncertifiedRadiusError(DaggerError):
    kind = "uncertified-radius"


class UncertifiedPrecisionError(DaggerError):
    kind = "uncertified-precision"


class CompletedModeError(DaggerError):
    """An operation needing strict overconvergence got a completed (slope 0) value."""

    kind = "uncertified-mode"


class NotDistinguishedError(DaggerError):
    kind = "not-distinguished"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonConvergenceError(DaggerError):
    kind = "non-convergence"


class NotPowerBoundedError(DaggerError):
    kind = "not-power-bounded"


class UnsupportedFamilyError(DaggerError):
    kind = "unsupported-family"


class UnsupportedLocalizationError(DaggerError):
    kind = "unsupported-localization"


class SchemaError(DaggerError):
    kind = "schema"


class UncertifiedPrecisionWarning(UserWarning):
    """The computed value reached the truncation level and may be an underestimate."""
