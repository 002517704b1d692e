"""Exception types raised across the package."""


class QIdentityError(Exception):
    """Base class for all errors raised by qidentities."""


class NotDivisible(QIdentityError, ArithmeticError):
    pass


class InvalidBinding(QIdentityError, ValueError):
    pass


class EmptyWindow(QIdentityError, ValueError):
    pass


class TruncationError(QIdentityError, IndexError):
    """A coefficient beyond the truncation order was requested."""


class NotInvertible(QIdentityError, ArithmeticError):
    pass


class InsufficientOrder(QIdentityError, ValueError):
    pass


class NonmonotoneCutoff(QIdentityError, AssertionError):
    """A summand contributed below the order after the declared cutoff."""


class DivergentSeries(QIdentityError, ValueError):
    pass


class EmptyPartition(QIdentityError, ValueError):
    pass


class FamilyMismatch(QIdentityError, ValueError):
    pass


class InvalidGap(QIdentityError, ValueError):
    pass


class UnknownIdentity(QIdentityError, KeyError):
    pass
