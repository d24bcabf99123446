"""Cost accounting for the successor family.

The elementary unit is one component-local factor ``u_l P_{.,l}``: a shift
of one component gated by a projection on that component.  A direct
``V_j`` is a data-independent scan of components ``j..L``, one unit each.
The alternative, reaching ``V_j`` by iterating ``V_1`` ``k**(j-1)`` times,
is exponentially more expensive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from qnumrep.digits import DigitString, Radix, encode_number
from qnumrep.errors import CapExceededError

UNIT = "component-local shift-with-projection factor"

#: Iterated strategies longer than this are costed but not executed.
MAX_EXECUTED_ITERATIONS = 2**16


class FactorCounter:
    """Counts successor applications and elementary factor units in one run."""

    def __init__(self):
        self.applications = 0
        self.units = 0

    def scan_successor(self, j: int, state: DigitString) -> DigitString:
        """``V_j`` as a fixed scan of components ``j..L`` with a carry flag.

        Every component in the scan is touched exactly once whatever the
        data, as in a circuit; the carry flag plays the role of the
        ``P_{k-1}`` projections that gate each next shift.
        """
        radix = state.radix
        radix.check_component(j)
        k = radix.k
        digits = list(state.digits)
        carry = True
        for n in range(j, radix.L + 1):
            if carry:
                carry = digits[n - 1] == k - 1
                digits[n - 1] = (digits[n - 1] + 1) % k
            self.units += 1
        self.applications += 1
        return DigitString(radix, tuple(digits))


def polynomial_bound(radix: Radix) -> int:
    """Reporting threshold ``(k L)**2`` for calling a unit count efficient."""
    return (radix.k * radix.L) ** 2


def direct_cost(j: int, radix: Radix) -> int:
    radix.check_component(j)
    return radix.L - j + 1


def iterated_cost(j: int, radix: Radix) -> int:
    radix.check_component(j)
    return radix.k ** (j - 1) * direct_cost(1, radix)


def run_direct(j: int, state: DigitString, counter: FactorCounter) -> DigitString:
    return counter.scan_successor(j, state)


def run_iterated(j: int, state: DigitString, counter: FactorCounter) -> DigitString:
    """Reach ``V_j`` through ``k**(j-1)`` applications of ``V_1``."""
    iterations = state.radix.k ** (j - 1)
    if iterations > MAX_EXECUTED_ITERATIONS:
        raise CapExceededError(
            f"{iterations} iterations exceeds the execution cap {MAX_EXECUTED_ITERATIONS}"
        )
    for _ in range(iterations):
        state = counter.scan_successor(1, state)
    return state


@dataclass(frozen=True)
class ResourceReport:
    j: int
    direct: int
    iterated: int
    ratio: Fraction
    verdict: str
    agrees: bool | None = None

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "direct": self.direct,
            "iterated": self.iterated,
            "ratio": str(self.ratio),
            "verdict": self.verdict,
            "agrees": self.agrees,
        }


def efficiency_report(radix: Radix, seed: int = 0) -> list[ResourceReport]:
    """One row per ``j``; ``verdict`` classifies the iterated strategy.

    Where the iteration count is within :data:`MAX_EXECUTED_ITERATIONS`
    both strategies are executed on a seeded random basis state and
    ``agrees`` records whether they end in the same state; otherwise
    ``agrees`` is ``None``.
    """
    rng = random.Random(seed)
    bound = polynomial_bound(radix)
    rows = []
    for j in range(1, radix.L + 1):
        direct = direct_cost(j, radix)
        iterated = iterated_cost(j, radix)
        agrees = None
        if radix.k ** (j - 1) <= MAX_EXECUTED_ITERATIONS:
            start = encode_number(rng.randrange(radix.modulus), radix)
            counter = FactorCounter()
            agrees = run_iterated(j, start, counter) == run_direct(j, start, FactorCounter())
            agrees = agrees and counter.units == iterated
        rows.append(
            ResourceReport(
                j=j,
                direct=direct,
                iterated=iterated,
                ratio=Fraction(iterated, direct),
                verdict="efficient" if iterated <= bound else "inefficient",
                agrees=agrees,
            )
        )
    return rows


def format_table(rows: list[ResourceReport], radix: Radix) -> str:
    header = ("j", "direct", "iterated", "ratio", "verdict", "agrees")
    body = [
        (str(r.j), str(r.direct), str(r.iterated), str(r.ratio), r.verdict,
         "-" if r.agrees is None else str(r.agrees).lower())
        for r in rows
    ]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
    lines = [
        f"# unit: {UNIT}; verdict threshold (kL)^2 = {polynomial_bound(radix)}",
        "  ".join(h.rjust(w) for h, w in zip(header, widths)),
    ]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body]
    return "\n".join(lines)
