"""Exception hierarchy.

Two families: ``UsageError`` for malformed requests (bad shapes, indices,
lengths) and ``NumericalError`` for inputs that parse but fail a numerical
precondition or post-check. The CLI maps them to exit codes 2 and 3.
"""


class SympSpecError(Exception):
    """Base class for every error raised by this package."""


class UsageError(SympSpecError, ValueError):
    pass


class NumericalError(SympSpecError, ArithmeticError):
    pass


class ShapeMismatch(UsageError):
    pass


class OddDimension(UsageError):
    pass


class IndexOutOfRange(UsageError):
    pass


class LengthMismatch(UsageError):
    pass


class ZeroCombination(UsageError):
    pass


class NegativeEntry(UsageError):
    pass


class NotSymmetric(NumericalError):
    pass


class NotSkew(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class SingularInput(NumericalError):
    pass


class NotSymplectic(NumericalError):
    pass


class MixedEigenvalues(NumericalError):
    pass


class NotInvariant(NumericalError):
    pass


class NumericalFailure(NumericalError):
    pass


class NotWeaklySupermajorized(NumericalError):
    pass


class NotMajorized(NumericalError):
    pass


class VerificationFailed(NumericalError):
    pass
