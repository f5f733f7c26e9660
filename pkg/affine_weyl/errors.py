"""
Error types for affine-weyl.
Every domain error is a ValueError so callers and the HTTP layer can treat
bad input uniformly.
"""

from typing import Optional


class AffineWeylError(ValueError):
    """Base class for all domain errors."""

    exit_code = 2
    status_code = 400


class RankMismatchError(AffineWeylError):
    """Operands of different rank, or a vector of the wrong length."""


class NotationError(AffineWeylError):
    """Text or JSON input that does not follow the element grammar."""

    status_code = 422

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class NotAnInvolutionError(AffineWeylError):
    """An involution-only operation received some other element."""

    def __init__(self, text: str = "element"):
        super().__init__(f"{text} is not an involution")


class NotAMemberError(AffineWeylError):
    """The element does not lie in the requested group."""


class InvalidFamilyError(AffineWeylError):
    """Unknown family tag or a rank outside the family's range."""


class UnrealizableDescriptorError(AffineWeylError):
    """A class descriptor that names no conjugacy class."""


class UnsupportedCaseError(AffineWeylError):
    """The operation has no construction for this class."""


class BudgetExceededError(AffineWeylError):
    """A search hit its node or time cap before finishing."""

    exit_code = 3
    status_code = 413


class VerificationError(AffineWeylError):
    """A computed witness failed its own check."""

    exit_code = 1
    status_code = 500
