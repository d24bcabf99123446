"""Numbers mod k**L as tensor-product qudit states, with exact operator simulation."""

from qnumrep.digits import (
    DigitString,
    Radix,
    decode_number,
    encode_number,
    oracle_add,
    oracle_mul,
)
from qnumrep.errors import (
    ArithmeticModelError,
    CapExceededError,
    DigitRangeError,
    NotUnitaryError,
    RadixMismatchError,
)

__version__ = "0.1.0"
