"""Operators on the abstract product space, acting on basis labels.

Every operator here is a permutation of digit strings (possibly extended
linearly to superpositions), so all actions are exact.  The successor
``V_j`` adds ``k**(j-1)`` by incrementing component ``j`` and propagating
the carry through the run of ``k-1`` digits above it.  Addition and
multiplication are built only from successor powers; nothing in this
module decodes a label to an integer to do arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from qnumrep.digits import DigitString, Radix, same_radix
from qnumrep.errors import ArithmeticModelError, DigitRangeError

Successor = Callable[[int, DigitString], DigitString]

NORM_TOLERANCE = 1e-12
PRUNE_THRESHOLD = 1e-15


def cyclic_shift(state: DigitString, j: int, steps: int = 1) -> DigitString:
    """Apply ``u_j**steps``: digit ``j`` becomes ``(digit + steps) mod k``."""
    k = state.radix.k
    return state.replace(j, (state[j] + steps) % k)


def project(state: DigitString, m: int, j: int) -> Optional[DigitString]:
    """Projection ``P_{m,j}`` as a partial map on labels.

    Returns ``state`` when its component ``j`` holds ``m`` and ``None``
    (the zero vector) otherwise.
    """
    if not 0 <= m < state.radix.k:
        raise DigitRangeError(f"digit value must be in 0..{state.radix.k - 1}, got {m}")
    return state if state[j] == m else None


def _increment(digits: list[int], j: int, k: int, L: int) -> None:
    """Add one at component ``j`` of ``digits`` in place, carrying upward."""
    n = j - 1
    while True:
        wrapped = digits[n] == k - 1
        digits[n] = 0 if wrapped else digits[n] + 1
        if not wrapped or n == L - 1:
            return
        n += 1


def successor_apply(j: int, state: DigitString) -> DigitString:
    radix = state.radix
    radix.check_component(j)
    digits = list(state.digits)
    _increment(digits, j, radix.k, radix.L)
    return DigitString.trusted(radix, digits)


def successor_power(
    j: int, state: DigitString, times: int, successor: Successor = successor_apply
) -> DigitString:
    """``V_j**times`` as ``times`` literal applications of ``successor``."""
    for _ in range(times):
        state = successor(j, state)
    return state


@dataclass(frozen=True)
class PairState:
    """Basis state of the doubled space.

    ``left`` occupies components 1..L and ``right`` occupies L+1..2L of the
    concatenated label.
    """

    left: DigitString
    right: DigitString

    def __post_init__(self):
        same_radix(self.left, self.right)

    @property
    def radix(self) -> Radix:
        return self.left.radix

    def concatenated(self) -> tuple[int, ...]:
        return self.left.digits + self.right.digits


def add_into(
    s: DigitString, w: DigitString, successor: Successor = successor_apply
) -> DigitString:
    """Return ``V_L**s(L) ... V_1**s(1) |w>``, factors applied in ascending j."""
    radix = same_radix(s, w)
    if successor is successor_apply:
        digits = list(w.digits)
        for j in range(1, radix.L + 1):
            for _ in range(s.digits[j - 1]):
                _increment(digits, j, radix.k, radix.L)
        return DigitString.trusted(radix, digits)
    for j in range(1, radix.L + 1):
        w = successor_power(j, w, s[j], successor)
    return w


def add_apply(pair: PairState, successor: Successor = successor_apply) -> PairState:
    """The ``+`` operator: ``|s>|w> -> |s>|s+w>``."""
    return PairState(pair.left, add_into(pair.left, pair.right, successor))


def times_apply(
    s: DigitString,
    w: DigitString,
    target: DigitString,
    successor: Successor = successor_apply,
) -> DigitString:
    """Schoolbook accumulator: ``|target> -> |target + s*w>``.

    For each component ``j`` of ``s`` the primitive "add ``w`` shifted up
    by ``j-1`` places" is applied ``s(j)`` times.  The shifted add is the
    product of ``V_{i+j-1}**w(i)``; digits shifted past component ``L``
    carry weight divisible by ``k**L`` and are dropped.
    """
    radix = same_radix(s, w, target)
    L = radix.L
    if successor is successor_apply:
        digits = list(target.digits)
        for j in range(1, L + 1):
            for _ in range(s.digits[j - 1]):
                for i in range(1, L - j + 2):
                    for _ in range(w.digits[i - 1]):
                        _increment(digits, i + j - 1, radix.k, L)
        return DigitString.trusted(radix, digits)
    for j in range(1, L + 1):
        for _ in range(s[j]):
            for i in range(1, L - j + 2):
                target = successor_power(i + j - 1, target, w[i], successor)
    return target


def times_cost(s: DigitString, w: DigitString) -> int:
    """Number of successor applications :func:`times_apply` performs."""
    L = s.radix.L
    return sum(s[j] * sum(w[i] for i in range(1, L - j + 2)) for j in range(1, L + 1))


@dataclass(frozen=True)
class Superposition:
    """Sparse pure state: digit string -> complex amplitude, unit norm."""

    radix: Radix
    terms: Mapping[DigitString, complex] = field(default_factory=dict)

    def __post_init__(self):
        pruned = {}
        for label, amp in self.terms.items():
            if label.radix != self.radix:
                raise ArithmeticModelError(f"term {label} is not over radix {self.radix}")
            amp = complex(amp)
            if abs(amp) >= PRUNE_THRESHOLD:
                pruned[label] = amp
        object.__setattr__(self, "terms", pruned)
        if abs(self.norm() - 1.0) > NORM_TOLERANCE:
            raise ArithmeticModelError(f"superposition norm {self.norm()!r} is not 1")

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(a) ** 2 for a in self.terms.values()))

    def amplitude(self, label: DigitString) -> complex:
        return self.terms.get(label, 0j)

    def map_labels(self, action: Callable[[DigitString], DigitString]) -> Superposition:
        """Linear extension of a label permutation; amplitudes are carried unchanged."""
        image = {}
        for label, amp in self.terms.items():
            target = action(label)
            if target in image:
                raise ArithmeticModelError("label action is not injective on this state")
            image[target] = amp
        return Superposition(self.radix, image)

    @classmethod
    def basis(cls, label: DigitString) -> Superposition:
        return cls(label.radix, {label: 1.0})


def successor_apply_super(j: int, psi: Superposition) -> Superposition:
    psi.radix.check_component(j)
    return psi.map_labels(lambda s: successor_apply(j, s))
