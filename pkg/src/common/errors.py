#
# errors.py
# exception hierarchy shared by every module
#


class CyclotomicError(Exception):
    """Base class for everything raised by this package."""


class InputError(CyclotomicError, ValueError):
    # caller handed us something outside the model
    pass


class InvalidModulusError(InputError):
    pass


class NotInvertibleError(InputError):
    pass


class InvalidTripleError(InputError):
    pass


class OutOfWindowError(InputError):
    pass


class IndexOutOfRangeError(InputError):
    pass


class DegreeTooLargeError(InputError):
    pass


class NonPositiveThresholdError(InputError):
    pass


class RequiresPGreaterThan3Error(InputError):
    pass


class SweepTooLargeError(InputError):
    pass


class InvariantError(CyclotomicError, AssertionError):
    # a proven identity did not hold: implementation bug, never bad input
    pass


class BoundViolationError(InvariantError):
    pass


class OddN1SumError(InvariantError):
    pass


class IdentityViolationError(InvariantError):
    pass
