"""Exception types raised on violated preconditions."""


class ArithmeticModelError(ValueError):
    """Base class for all precondition violations in this package."""


class DigitRangeError(ArithmeticModelError):
    """A number, digit or component index lies outside its allowed range."""


class CapExceededError(ArithmeticModelError):
    """A desk-scale size cap (dimension, enumeration count, iteration count) was exceeded."""


class RadixMismatchError(ArithmeticModelError):
    """Two operands were built over different (k, L) radices or label sets."""


class NotUnitaryError(ArithmeticModelError):
    """An operator required to be unitary failed the unitarity check."""
