"""Exception hierarchy shared across the package.

Exit-code mapping in the CLI: SpecFileError -> 2, PreconditionError and
NotPositiveDefiniteError / NotAFrameError -> 1, InvariantViolation -> 3.
"""


class FrameBankError(Exception):
    """Base class for all framebank errors."""


class SpecFileError(FrameBankError):
    """A system description file could not be parsed or validated."""


class PreconditionError(FrameBankError):
    """A documented precondition (often a theorem hypothesis) is violated."""


class NotPositiveDefiniteError(FrameBankError):
    """A matrix expected to be Hermitian positive definite is not."""


class NotAFrameError(FrameBankError):
    """The estimated lower frame bound is numerically zero."""


class InsufficientDataError(FrameBankError):
    """Too few samples to fit a decay model."""


class InvariantViolation(FrameBankError):
    """A verified numerical invariant failed."""
