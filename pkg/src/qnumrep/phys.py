"""Physical-parameter labels and the tensor-product preserving maps W_{g,d}.

``A`` names the L component sites and ``B`` the k internal states.  A map
pair ``(g, d)`` sends component ``j`` to site ``A[g[j-1]]`` and digit ``h``
to state ``B[d[h]]``; ``W_{g,d}`` relabels a digit string accordingly.
Conjugating an abstract operator by ``W`` gives its physical representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from qnumrep.arith import PairState, add_apply, successor_apply
from qnumrep.digits import DigitString, Radix, decode_number, encode_number
from qnumrep.errors import CapExceededError, DigitRangeError, RadixMismatchError
from qnumrep.matrices import DenseOperator

MAX_ENUM_L = 6
MAX_ENUM_K = 6


@dataclass(frozen=True)
class LabelSets:
    A: tuple[str, ...]
    B: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        if len(self.A) < 1 or len(set(self.A)) != len(self.A):
            raise DigitRangeError(f"site labels must be distinct and non-empty: {self.A}")
        if len(self.B) < 2 or len(set(self.B)) != len(self.B):
            raise DigitRangeError(f"state labels must be distinct, at least 2: {self.B}")

    @property
    def radix(self) -> Radix:
        return Radix(len(self.B), len(self.A))

    @classmethod
    def default(cls, radix: Radix) -> LabelSets:
        return cls(
            tuple(f"a{j}" for j in range(1, radix.L + 1)),
            tuple(f"b{h}" for h in range(radix.k)),
        )


def _check_bijection(perm: Sequence[int], size: int, name: str) -> tuple[int, ...]:
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(size)):
        raise DigitRangeError(f"{name} must be a permutation of 0..{size - 1}, got {list(perm)}")
    return perm


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    inverse = [0] * len(perm)
    for i, p in enumerate(perm):
        inverse[p] = i
    return tuple(inverse)


@dataclass(frozen=True)
class MapPair:
    """Bijections ``g`` (component -> site index) and ``d`` (digit -> state index)."""

    labels: LabelSets
    g: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", _check_bijection(self.g, len(self.labels.A), "g"))
        object.__setattr__(self, "d", _check_bijection(self.d, len(self.labels.B), "d"))

    @property
    def radix(self) -> Radix:
        return self.labels.radix

    def site(self, j: int) -> str:
        return self.labels.A[self.g[j - 1]]

    def state(self, h: int) -> str:
        return self.labels.B[self.d[h]]

    def inverse_indices(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(g^-1, d^-1)`` as index permutations (site index -> component-1, state index -> digit)."""
        return _invert(self.g), _invert(self.d)

    def to_json(self) -> dict:
        return {"g": list(self.g), "d": list(self.d), "A": list(self.labels.A), "B": list(self.labels.B)}

    @classmethod
    def identity(cls, labels: LabelSets) -> MapPair:
        return cls(labels, tuple(range(len(labels.A))), tuple(range(len(labels.B))))


@dataclass(frozen=True)
class PhysState:
    """Basis state ``|t>``: ``values[i]`` is the internal state at site ``A[i]``."""

    labels: LabelSets
    values: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.labels.A):
            raise DigitRangeError(f"assignment must cover all {len(self.labels.A)} sites")
        for v in self.values:
            if v not in self.labels.B:
                raise DigitRangeError(f"unknown internal state label {v!r}")

    @property
    def assignment(self) -> dict[str, str]:
        return dict(zip(self.labels.A, self.values))

    def __getitem__(self, a: str) -> str:
        return self.values[self.labels.A.index(a)]

    def index(self) -> int:
        """Basis index with site ``A[i]`` as the ``i``-th base-k place, values by B order."""
        k = len(self.labels.B)
        return sum(self.labels.B.index(v) * k**i for i, v in enumerate(self.values))

    @classmethod
    def from_assignment(cls, labels: LabelSets, assignment: Mapping[str, str]) -> PhysState:
        if set(assignment) != set(labels.A):
            raise DigitRangeError("assignment keys must be exactly the site labels")
        return cls(labels, tuple(assignment[a] for a in labels.A))

    @classmethod
    def from_index(cls, labels: LabelSets, index: int) -> PhysState:
        k = len(labels.B)
        values = []
        for _ in labels.A:
            index, b = divmod(index, k)
            values.append(labels.B[b])
        return cls(labels, tuple(values))

    def to_json(self) -> dict:
        return {"assignment": self.assignment}


def _check_sizes(maps: MapPair, radix: Radix) -> None:
    if radix != maps.radix:
        raise RadixMismatchError(
            f"label sets give (k={maps.radix.k}, L={maps.radix.L}), state has (k={radix.k}, L={radix.L})"
        )


def wgd_apply(maps: MapPair, s: DigitString) -> PhysState:
    """``W_{g,d}|s>``: site ``g(j)`` receives state ``d(s(j))``."""
    _check_sizes(maps, s.radix)
    values: list[Optional[str]] = [None] * s.radix.L
    for j in range(1, s.radix.L + 1):
        values[maps.g[j - 1]] = maps.state(s[j])
    return PhysState(maps.labels, tuple(values))


def wgd_inverse_apply(maps: MapPair, t: PhysState) -> DigitString:
    """``W_{g,d}^dagger |t>``, evaluated as ``W_{g^-1,d^-1}``.

    Each site ``a`` sends its state ``t(a)`` to component ``g^-1(a)`` as
    digit ``d^-1(t(a))``.
    """
    if t.labels != maps.labels:
        raise RadixMismatchError("physical state and map pair use different label sets")
    g_inv, d_inv = maps.inverse_indices()
    digits = [0] * len(maps.g)
    for i, value in enumerate(t.values):
        digits[g_inv[i]] = d_inv[maps.labels.B.index(value)]
    return DigitString(maps.radix, tuple(digits))


def conjugated_successor_apply(maps: MapPair, j: int, t: PhysState) -> PhysState:
    """``V^{d}_{g,j} = W V_j W^dagger`` on a physical basis state."""
    return wgd_apply(maps, successor_apply(j, wgd_inverse_apply(maps, t)))


def conjugated_add_apply(maps: MapPair, pair: tuple[PhysState, PhysState]) -> tuple[PhysState, PhysState]:
    """``(W (x) W) + (W^dagger (x) W^dagger)`` on a pair of physical basis states."""
    left, right = pair
    out = add_apply(PairState(wgd_inverse_apply(maps, left), wgd_inverse_apply(maps, right)))
    return wgd_apply(maps, out.left), wgd_apply(maps, out.right)


def number_of_state(maps: MapPair, t: PhysState) -> int:
    """The integer that ``t`` represents under the map pair ``maps``."""
    return decode_number(wgd_inverse_apply(maps, t))


def count_maps(labels: LabelSets) -> int:
    return math.factorial(len(labels.A)) * math.factorial(len(labels.B))


def enumerate_maps(labels: LabelSets) -> Iterator[MapPair]:
    """Every ``(g, d)`` pair, lexicographic in ``g`` then ``d``."""
    L, k = len(labels.A), len(labels.B)
    if L > MAX_ENUM_L or k > MAX_ENUM_K:
        raise CapExceededError(
            f"map enumeration capped at L <= {MAX_ENUM_L}, k <= {MAX_ENUM_K}; got L={L}, k={k}"
        )
    for g in itertools.permutations(range(L)):
        for d in itertools.permutations(range(k)):
            yield MapPair(labels, g, d)


def wgd_matrix(maps: MapPair) -> DenseOperator:
    """``W_{g,d}`` as a permutation matrix from arith indices to :meth:`PhysState.index`."""
    radix = maps.radix
    perm = [wgd_apply(maps, encode_number(n, radix)).index() for n in range(radix.modulus)]
    return DenseOperator.from_permutation(perm)


def conjugated_successor_matrix(maps: MapPair, j: int) -> DenseOperator:
    """``V^{d}_{g,j}`` as a permutation matrix on physical basis indices."""
    labels = maps.labels
    perm = [
        conjugated_successor_apply(maps, j, PhysState.from_index(labels, i)).index()
        for i in range(maps.radix.modulus)
    ]
    return DenseOperator.from_permutation(perm)


def path_length(maps: MapPair) -> int:
    """Total hop distance of the path ``g(1), g(2), ..., g(L)`` through the declared site order."""
    return int(np.sum(np.abs(np.diff(np.asarray(maps.g))))) if len(maps.g) > 1 else 0
