"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation precondition was violated."""


class LevelMismatchError(DomainError):
    """A pointed map was applied to data of the wrong level."""


class OutOfRangeError(DomainError):
    """A requested value lies outside the representable range."""


class SizeCapError(DomainError):
    """An enumeration or search would exceed its configured cap."""


class PrecisionError(ArithmeticError):
    """A comparison stayed ambiguous at the maximum working precision."""


class FormulaViolation(ArithmeticError):
    """The Euler characteristic identity failed for some divisor."""
