"""Commutative-ring-with-identity axioms checked through the operator machinery.

Sums and products come from :func:`~qnumrep.arith.add_into` and
:func:`~qnumrep.arith.times_apply`; the integer oracle only cross-validates.
A case fails when its two sides disagree with each other or with the oracle.

The nine axioms: additive associativity, commutativity, identity and
inverses; multiplicative associativity, commutativity and identity; left
and right distributivity.  Successor coherence (``S`` equals ``+1``) is
reported alongside them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from qnumrep.arith import Successor, add_into, successor_apply, times_apply
from qnumrep.digits import DigitString, Radix, decode_number, encode_number
from qnumrep.errors import CapExceededError

EXHAUSTIVE_DEFAULT_CAP = 64
EXHAUSTIVE_MAX = 256
SAMPLED_MAX = 1024
DEFAULT_SAMPLES = 10_000

AXIOMS = (
    "additive_associativity",
    "additive_commutativity",
    "additive_identity",
    "additive_inverses",
    "multiplicative_associativity",
    "multiplicative_commutativity",
    "multiplicative_identity",
    "left_distributivity",
    "right_distributivity",
)


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[dict] = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        detail = {"cases": self.cases}
        if self.counterexample is not None:
            detail["counterexample"] = self.counterexample
        return {"name": self.name, "status": self.status, "detail": detail}


@dataclass
class AxiomReport:
    radix: Radix
    mode: str
    elements: int
    seed: Optional[int]
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.name == name)


class _OperatorTable:
    """Memoized binary operation on integers, evaluated through digit strings."""

    def __init__(self, radix: Radix, op: Callable[[DigitString, DigitString], DigitString]):
        self.radix = radix
        self.op = op
        self.full: Optional[np.ndarray] = None
        self.memo: dict[tuple[int, int], int] = {}
        self.labels = [encode_number(n, radix) for n in range(radix.modulus)]

    def fill(self) -> None:
        N = self.radix.modulus
        self.full = np.array(
            [[self._eval(a, b) for b in range(N)] for a in range(N)], dtype=np.int64
        )

    def _eval(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self.memo:
            self.memo[key] = decode_number(self.op(self.labels[a], self.labels[b]))
        return self.memo[key]

    def __call__(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.full is not None:
            return self.full[a, b]
        a, b = np.broadcast_arrays(a, b)
        return np.fromiter((self._eval(int(x), int(y)) for x, y in zip(a.ravel(), b.ravel())),
                           dtype=np.int64, count=a.size).reshape(a.shape)


def _equation(name, names, columns, lhs, rhs, oracle) -> AxiomCheck:
    bad = (lhs != rhs) | (lhs != oracle)
    found = None
    if bad.any():
        i = int(np.argmax(bad))
        found = {n: int(col[i]) for n, col in zip(names, columns)}
        found.update(lhs=int(lhs[i]), rhs=int(rhs[i]), expected=int(oracle[i]))
    return AxiomCheck(name, found is None, len(columns[0]), found)


def axiom_suite(
    radix: Radix,
    mode: str = "auto",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    successor: Successor = successor_apply,
) -> AxiomReport:
    """Check the nine ring axioms and successor coherence.

    ``mode="auto"`` enumerates every case when ``k**L <= 64`` and otherwise
    draws ``samples`` seeded triples (allowed up to ``k**L = 1024``).
    ``mode="exhaustive"`` is accepted up to ``k**L = 256``.  ``successor``
    replaces the carry-chain successor everywhere, for fault injection.
    """
    N = radix.modulus
    if mode == "auto":
        mode = "exhaustive" if N <= EXHAUSTIVE_DEFAULT_CAP else "sampled"
    if mode == "exhaustive" and N > EXHAUSTIVE_MAX:
        raise CapExceededError(f"exhaustive axiom checks capped at k**L <= {EXHAUSTIVE_MAX}, got {N}")
    if mode == "sampled" and N > SAMPLED_MAX:
        raise CapExceededError(f"sampled axiom checks capped at k**L <= {SAMPLED_MAX}, got {N}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")

    add = _OperatorTable(radix, lambda s, w: add_into(s, w, successor))
    zero = DigitString.zero(radix)
    mul = _OperatorTable(radix, lambda s, w: times_apply(s, w, zero, successor))

    if mode == "exhaustive":
        add.fill()
        mul.fill()
        a, b, c = (x.ravel() for x in np.meshgrid(*(np.arange(N),) * 3, indexing="ij"))
        pa, pb = (x.ravel() for x in np.meshgrid(np.arange(N), np.arange(N), indexing="ij"))
        report = AxiomReport(radix, mode, N, None)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, N, size=(3, samples))
        pa, pb = a, b
        report = AxiomReport(radix, mode, N, seed)

    elems = np.arange(N)
    one = 1 % N
    triple = ("a", "b", "c")
    pair = ("a", "b")
    checks = report.checks

    checks.append(_equation(
        "additive_associativity", triple, (a, b, c),
        add(add(a, b), c), add(a, add(b, c)), (a + b + c) % N))
    checks.append(_equation(
        "additive_commutativity", pair, (pa, pb),
        add(pa, pb), add(pb, pa), (pa + pb) % N))
    checks.append(_equation(
        "additive_identity", ("a",), (elems,),
        add(elems, 0), add(0, elems), elems))

    # The oracle's candidate, summed by the operators, witnesses existence.
    candidate = (N - elems) % N
    bad = add(elems, candidate) != 0
    cex = None
    if bad.any():
        i = int(np.argmax(bad))
        row = add(np.full(N, i), elems)
        cex = {"a": i, "operator_inverses": [int(x) for x in np.flatnonzero(row == 0)],
               "expected_inverse": int(candidate[i])}
    checks.append(AxiomCheck("additive_inverses", cex is None, N, cex))

    checks.append(_equation(
        "multiplicative_associativity", triple, (a, b, c),
        mul(mul(a, b), c), mul(a, mul(b, c)), (a * b % N) * c % N))
    checks.append(_equation(
        "multiplicative_commutativity", pair, (pa, pb),
        mul(pa, pb), mul(pb, pa), pa * pb % N))
    checks.append(_equation(
        "multiplicative_identity", ("a",), (elems,),
        mul(elems, one), mul(one, elems), elems))
    checks.append(_equation(
        "left_distributivity", triple, (a, b, c),
        mul(a, add(b, c)), add(mul(a, b), mul(a, c)), a * ((b + c) % N) % N))
    checks.append(_equation(
        "right_distributivity", triple, (a, b, c),
        mul(add(a, b), c), add(mul(a, c), mul(b, c)), ((a + b) % N) * c % N))

    one_label = encode_number(one, radix)
    labels = add.labels
    via_successor = np.array([decode_number(successor(1, s)) for s in labels])
    via_add = np.array([decode_number(add_into(one_label, s, successor)) for s in labels])
    checks.append(_equation(
        "successor_coherence", ("a",), (elems,), via_successor, via_add, (elems + 1) % N))
    return report


def carry_skipping_successor(j: int, state: DigitString) -> DigitString:
    """Faulty successor that increments component ``j`` and drops the carry."""
    return state.replace(j, (state[j] + 1) % state.radix.k)
