"""Digit strings for k-ary numbers of length L, and a plain-integer oracle.

Component ``j`` (1-based) carries positional weight ``k**(j-1)``, so digit 1
is the least significant.  Everything that serializes a digit string lists
digits from component 1 upward, e.g. ``"0,1,1"`` is 6 in base 2.

The oracle functions use nothing but Python integer arithmetic and are the
ground truth every operator-level check is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass

from qnumrep.errors import DigitRangeError, RadixMismatchError

#: Largest modulus k**L accepted by :class:`Radix` (exhaustive desk-scale use).
MAX_MODULUS = 2**20


@dataclass(frozen=True)
class Radix:
    """Digit alphabet size ``k`` and number of components ``L``."""

    k: int
    L: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise DigitRangeError(f"k must be an integer >= 2, got {self.k!r}")
        if not isinstance(self.L, int) or self.L < 1:
            raise DigitRangeError(f"L must be an integer >= 1, got {self.L!r}")
        if self.k**self.L > MAX_MODULUS:
            raise DigitRangeError(
                f"k**L = {self.k}**{self.L} exceeds the cap {MAX_MODULUS}"
            )

    @property
    def modulus(self) -> int:
        return self.k**self.L

    def weight(self, j: int) -> int:
        """Positional weight ``k**(j-1)`` of component ``j``."""
        self.check_component(j)
        return self.k ** (j - 1)

    def check_component(self, j: int) -> None:
        if not isinstance(j, int) or not 1 <= j <= self.L:
            raise DigitRangeError(f"component index j must be in 1..{self.L}, got {j!r}")

    def check_value(self, n: int) -> None:
        if not isinstance(n, int) or not 0 <= n < self.modulus:
            raise DigitRangeError(f"value must be in [0, {self.modulus}), got {n!r}")


@dataclass(frozen=True)
class DigitString:
    """A basis label: the function j -> digit, stored as a tuple indexed j-1."""

    radix: Radix
    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        if len(digits) != self.radix.L:
            raise DigitRangeError(
                f"expected {self.radix.L} digits, got {len(digits)}"
            )
        for j, h in enumerate(digits, start=1):
            if not isinstance(h, int) or not 0 <= h < self.radix.k:
                raise DigitRangeError(
                    f"digit {j} must be in 0..{self.radix.k - 1}, got {h!r}"
                )

    def __getitem__(self, j: int) -> int:
        """Digit of component ``j`` (1-based)."""
        self.radix.check_component(j)
        return self.digits[j - 1]

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.digits)

    def replace(self, j: int, h: int) -> DigitString:
        self.radix.check_component(j)
        digits = list(self.digits)
        digits[j - 1] = h
        return DigitString(self.radix, tuple(digits))

    @classmethod
    def parse(cls, text: str, radix: Radix) -> DigitString:
        """Parse ``"d1,d2,...,dL"`` (component 1 first)."""
        try:
            digits = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise DigitRangeError(f"malformed digit string {text!r}") from None
        return cls(radix, digits)

    @classmethod
    def trusted(cls, radix: Radix, digits) -> DigitString:
        """Build without validation; for internal callers that preserve digit ranges."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "radix", radix)
        object.__setattr__(obj, "digits", tuple(digits))
        return obj

    @classmethod
    def zero(cls, radix: Radix) -> DigitString:
        return cls(radix, (0,) * radix.L)


def same_radix(*states: DigitString) -> Radix:
    """Return the shared radix of ``states`` or raise :class:`RadixMismatchError`."""
    radix = states[0].radix
    for s in states[1:]:
        if s.radix != radix:
            raise RadixMismatchError(f"radix mismatch: {radix} vs {s.radix}")
    return radix


def encode_number(n: int, radix: Radix) -> DigitString:
    radix.check_value(n)
    digits = []
    for _ in range(radix.L):
        n, h = divmod(n, radix.k)
        digits.append(h)
    return DigitString(radix, tuple(digits))


def decode_number(s: DigitString) -> int:
    value = 0
    for h in reversed(s.digits):
        value = value * s.radix.k + h
    return value


def all_digit_strings(radix: Radix):
    """Yield every basis label in increasing numeric order."""
    for n in range(radix.modulus):
        yield encode_number(n, radix)


def oracle_add(n: int, m: int, radix: Radix) -> int:
    radix.check_value(n)
    radix.check_value(m)
    return (n + m) % radix.modulus


def oracle_mul(n: int, m: int, radix: Radix) -> int:
    radix.check_value(n)
    radix.check_value(m)
    return (n * m) % radix.modulus
