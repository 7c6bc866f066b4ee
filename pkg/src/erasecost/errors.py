"""Exception hierarchy for erasecost.

Every error raised by the library derives from :class:`ErasureError`, so
callers can catch one type at the CLI boundary.  Validation-style errors
also derive from ``ValueError`` to play well with generic handling.
"""


class ErasureError(Exception):
    """Base class for all erasecost errors."""


class ValidationError(ErasureError, ValueError):
    """Inputs violate a documented precondition."""


class NonPositiveMassError(ValidationError):
    """Probability vector or matrix with total mass <= 0."""


class NegativeEntryError(ValidationError):
    """Probability entry below the -1e-12 clamping threshold."""


class DimensionMismatchError(ValidationError):
    """Operands whose alphabet sizes do not line up."""


class DomainError(ValidationError):
    """Scalar argument outside its documented range."""


class LengthMismatchError(ValidationError):
    """Sequences of unequal length where equal length is required."""


class IndexOutOfRangeError(ValidationError):
    """Symbol index outside the alphabet."""


class ConfigError(ValidationError):
    """Solver configuration with non-positive tolerances or budgets."""


class ScaleGuardError(ValidationError):
    """Problem size beyond a hard enumeration or simulation guard."""


class MissingQuantileError(ErasureError, KeyError):
    """Requested cost quantile was not recorded in the report."""


class AllMasslessError(ErasureError):
    """No source symbol carries positive probability (internal; should be
    unreachable for validated joints)."""


class InternalError(ErasureError):
    """Consistency violation that indicates a bug, not bad input."""
