"""Exception hierarchy.

Every numerical failure raised by the package derives from
:class:`HypercurveError`, so callers (the CLI in particular) can map the
whole family onto one exit code.
"""


class HypercurveError(Exception):
    """Base class for all package errors."""


class InputError(HypercurveError, ValueError):
    """Bad user input (exit code 2 in the CLI)."""


class NumericalError(HypercurveError, ArithmeticError):
    """A computation could not reach its accuracy target (exit code 3)."""


class DegenerateInputError(InputError):
    pass


class NonConvergenceError(NumericalError):
    pass


class DegreeViolationError(NumericalError):
    pass


class NearSingularError(NumericalError):
    pass


class OffCurveError(InputError):
    pass


class ZeroBranchError(NumericalError):
    pass


class SingularDenominatorError(NumericalError):
    pass


class PoleAtR0Error(NumericalError):
    pass


class NearPoleError(NumericalError):
    pass


class QuadratureFailureError(NumericalError):
    pass


class NoSignChangeError(NumericalError):
    pass


class BranchCollisionError(NumericalError):
    pass


class StepCollapseError(NumericalError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
