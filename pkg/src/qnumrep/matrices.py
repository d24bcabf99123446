"""Dense matrix forms of the arithmetic operators at small dimension.

Basis ordering: the label ``s`` sits at index ``decode_number(s)``, so
component 1 is the fastest-varying tensor factor and a single-component
factor ``f`` acting on component ``j`` lifts to
``I_{k**(L-j)} (x) f (x) I_{k**(j-1)}``.  Pair operators index ``(s, w)``
as ``decode(s) + k**L * decode(w)`` (left register in the low components).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from qnumrep.arith import PairState, add_apply, successor_apply
from qnumrep.digits import Radix, decode_number, encode_number
from qnumrep.errors import CapExceededError, DigitRangeError, NotUnitaryError

MAX_DIM = 4096
UNITARY_TOLERANCE = 1e-10
HERMITIAN_TOLERANCE = 1e-10


def _check_dim(dim: int) -> None:
    if dim > MAX_DIM:
        raise CapExceededError(f"dense dimension {dim} exceeds the cap {MAX_DIM}")


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A square matrix, optionally carrying the permutation it realizes.

    ``permutation[i]`` is the image of basis index ``i``; when present the
    matrix has a single 1 at ``[permutation[i], i]`` in every column.
    """

    entries: np.ndarray
    permutation: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DigitRangeError(f"operator must be square, got shape {entries.shape}")
        _check_dim(entries.shape[0])
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_permutation(cls, permutation: Sequence[int]) -> DenseOperator:
        perm = tuple(int(p) for p in permutation)
        dim = len(perm)
        _check_dim(dim)
        if sorted(perm) != list(range(dim)):
            raise DigitRangeError("image list is not a permutation")
        entries = np.zeros((dim, dim), dtype=np.int64)
        entries[list(perm), list(range(dim))] = 1
        return cls(entries, perm)

    def is_permutation(self) -> bool:
        return self.permutation is not None

    def to_json(self) -> dict:
        if self.permutation is not None:
            return {"dim": self.dim, "permutation": list(self.permutation)}
        rows = self.entries.astype(complex)
        return {
            "dim": self.dim,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in rows],
        }


def _lift(factor: np.ndarray, j: int, radix: Radix) -> sp.csr_matrix:
    k, L = radix.k, radix.L
    high = sp.identity(k ** (L - j), dtype=np.int64, format="csr")
    low = sp.identity(k ** (j - 1), dtype=np.int64, format="csr")
    return sp.kron(sp.kron(high, sp.csr_matrix(factor)), low, format="csr")


def _shift_factor(j: int, radix: Radix) -> sp.csr_matrix:
    k = radix.k
    u = np.zeros((k, k), dtype=np.int64)
    u[(np.arange(k) + 1) % k, np.arange(k)] = 1
    return _lift(u, j, radix)


def _projector_factor(m: int, j: int, radix: Radix) -> sp.csr_matrix:
    p = np.zeros((radix.k, radix.k), dtype=np.int64)
    p[m, m] = 1
    return _lift(p, j, radix)


def shift_matrix(j: int, radix: Radix) -> DenseOperator:
    """``u_j``: cyclic shift ``|h> -> |h+1 mod k>`` on component ``j``."""
    radix.check_component(j)
    _check_dim(radix.modulus)
    entries = _shift_factor(j, radix).toarray()
    perm = tuple(int(i) for i in np.argmax(entries, axis=0))
    return DenseOperator(entries, perm)


def projector_matrix(m: int, j: int, radix: Radix) -> DenseOperator:
    """``P_{m,j}``: diagonal 0/1 matrix selecting labels with digit ``j`` equal to ``m``."""
    radix.check_component(j)
    if not isinstance(m, int) or not 0 <= m < radix.k:
        raise DigitRangeError(f"digit value must be in 0..{radix.k - 1}, got {m!r}")
    _check_dim(radix.modulus)
    return DenseOperator(_projector_factor(m, j, radix).toarray())


def successor_matrix_literal(j: int, radix: Radix) -> DenseOperator:
    """``V_j`` assembled as the sum over carry-chain lengths.

    Term ``n`` (for ``n = j..L``) is ``u_n P_{!=k-1,n}`` times the product of
    ``u_l P_{k-1,l}`` over ``l = j..n-1``; the final term is the full-wrap
    product over ``l = j..L``.  The running product is kept so each ``n``
    costs two products.  Factors are sparse integer matrices, so every
    entry is exact.
    """
    radix.check_component(j)
    _check_dim(radix.modulus)
    k, L = radix.k, radix.L
    identity = sp.identity(radix.modulus, dtype=np.int64, format="csr")
    chain = identity
    total = sp.csr_matrix((radix.modulus, radix.modulus), dtype=np.int64)
    for n in range(j, L + 1):
        u = _shift_factor(n, radix)
        at_top = _projector_factor(k - 1, n, radix)
        below_top = identity - at_top
        total = total + u @ below_top @ chain
        chain = u @ at_top @ chain
    total = (total + chain).toarray()
    return DenseOperator(total, _permutation_of(total))


def _permutation_of(entries: np.ndarray) -> Optional[tuple[int, ...]]:
    ints = np.asarray(entries)
    if not np.array_equal(ints, ints.astype(np.int64)):
        return None
    ints = ints.astype(np.int64)
    if not (np.all((ints == 0) | (ints == 1)) and np.all(ints.sum(axis=0) == 1)
            and np.all(ints.sum(axis=1) == 1)):
        return None
    return tuple(int(i) for i in np.argmax(ints, axis=0))


def successor_permutation(j: int, radix: Radix) -> tuple[int, ...]:
    """Image of every basis index under the carry-chain ``successor_apply``."""
    radix.check_component(j)
    return tuple(
        decode_number(successor_apply(j, encode_number(n, radix)))
        for n in range(radix.modulus)
    )


def successor_matrix(j: int, radix: Radix) -> DenseOperator:
    """``V_j`` from the label action (the carry-chain route)."""
    _check_dim(radix.modulus)
    return DenseOperator.from_permutation(successor_permutation(j, radix))


def add_matrix(radix: Radix) -> DenseOperator:
    """``+`` on the doubled space, built by running :func:`add_apply` on every pair."""
    N = radix.modulus
    _check_dim(N * N)
    perm = [0] * (N * N)
    for w in range(N):
        for s in range(N):
            out = add_apply(PairState(encode_number(s, radix), encode_number(w, radix)))
            perm[s + N * w] = decode_number(out.left) + N * decode_number(out.right)
    return DenseOperator.from_permutation(perm)


def compose_permutations(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Index map of ``outer . inner`` (apply ``inner`` first)."""
    return tuple(outer[i] for i in inner)


def permutation_power(perm: Sequence[int], exponent: int) -> tuple[int, ...]:
    result = tuple(range(len(perm)))
    for _ in range(exponent):
        result = compose_permutations(perm, result)
    return result


class UnitaryCheck(NamedTuple):
    ok: bool
    residual: float


def check_unitary(op: DenseOperator | np.ndarray) -> UnitaryCheck:
    """Max-entry residual of ``U^dagger U - I``.

    Integer matrices are multiplied in sparse integer arithmetic, so a
    permutation matrix reports a residual of exactly 0.
    """
    entries = op.entries if isinstance(op, DenseOperator) else np.asarray(op)
    if np.issubdtype(entries.dtype, np.integer):
        e = sp.csr_matrix(entries)
        diff = (e.T @ e - sp.identity(entries.shape[0], dtype=entries.dtype, format="csr")).tocoo()
        residual = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    else:
        gram = entries.conj().T @ entries
        residual = float(np.max(np.abs(gram - np.eye(len(gram)))))
    return UnitaryCheck(residual <= UNITARY_TOLERANCE, residual)


@dataclass(frozen=True, eq=False)
class HermitianGenerator:
    """``H`` and ``t`` with ``exp(-i H t)`` equal to a target unitary."""

    entries: np.ndarray
    time: float

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def evolve(self) -> np.ndarray:
        """``exp(-i H t)`` via the Pade-based matrix exponential."""
        return scipy.linalg.expm(-1j * self.time * self.entries)

    def to_json(self) -> dict:
        return {"time": self.time, **DenseOperator(self.entries).to_json()}


def extract_hamiltonian(op: DenseOperator | np.ndarray, t: float = 1.0) -> HermitianGenerator:
    """Hermitian ``H`` with ``exp(-i H t) = op``.

    A unitary is normal, so its complex Schur form is diagonal and the Schur
    vectors give an orthonormal eigenbasis even inside degenerate
    eigenspaces.  Each eigenvalue ``exp(i phi)`` contributes the eigenphase
    ``theta = -phi`` of ``H t``, taken in ``(-pi, pi]``.
    """
    if not t > 0:
        raise DigitRangeError(f"time must be positive, got {t!r}")
    entries = op.entries if isinstance(op, DenseOperator) else np.asarray(op)
    check = check_unitary(entries)
    if not check.ok:
        raise NotUnitaryError(f"operator is not unitary (residual {check.residual:.3e})")
    schur, vectors = scipy.linalg.schur(entries.astype(complex), output="complex")
    eigenvalues = np.diag(schur)
    theta = -np.angle(eigenvalues)
    theta[theta <= -np.pi + 1e-12] += 2 * np.pi
    h = (vectors * (theta / t)) @ vectors.conj().T
    h = (h + h.conj().T) / 2
    return HermitianGenerator(h, float(t))


def roundtrip_residual(generator: HermitianGenerator, op: DenseOperator | np.ndarray) -> float:
    """Frobenius norm of ``exp(-i H t) - op``."""
    entries = op.entries if isinstance(op, DenseOperator) else np.asarray(op)
    return float(np.linalg.norm(generator.evolve() - entries, ord="fro"))


def conjugate_by(op: DenseOperator | np.ndarray, U: DenseOperator | np.ndarray) -> DenseOperator:
    """``U op U^dagger``."""
    a = op.entries if isinstance(op, DenseOperator) else np.asarray(op)
    u = U.entries if isinstance(U, DenseOperator) else np.asarray(U)
    if a.shape != u.shape:
        raise DigitRangeError(f"dimension mismatch: {a.shape} vs {u.shape}")
    check = check_unitary(u)
    if not check.ok:
        raise NotUnitaryError(f"conjugating matrix is not unitary (residual {check.residual:.3e})")
    return DenseOperator(u @ a @ u.conj().T)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Gaussian matrix."""
    _check_dim(dim)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def power_identity_residual(family: Sequence[np.ndarray], k: int) -> float:
    """Largest entry of ``V_j**k - V_{j+1}`` over ``j``, and of ``V_L**k - I``.

    ``family[j-1]`` is ``V_j``.  Integer inputs give an exact integer residual.
    """
    mats = [np.asarray(m) for m in family]
    residual = 0.0
    for j, m in enumerate(mats):
        target = mats[j + 1] if j + 1 < len(mats) else np.eye(len(m), dtype=m.dtype)
        residual = max(residual, float(np.max(np.abs(np.linalg.matrix_power(m, k) - target))))
    return residual


def conjugation_invariance(radix: Radix, seed: int = 0, count: int = 20) -> list[float]:
    """Power-identity residual of ``U V_j U^dagger`` for ``count`` seeded Haar ``U``."""
    if radix.modulus > 16:
        raise CapExceededError(f"Haar conjugation checks are limited to dim <= 16, got {radix.modulus}")
    family = [successor_matrix(j, radix).entries for j in range(1, radix.L + 1)]
    rng = np.random.default_rng(seed)
    residuals = []
    for _ in range(count):
        u = haar_unitary(radix.modulus, rng)
        conjugated = [conjugate_by(v, u).entries for v in family]
        residuals.append(power_identity_residual(conjugated, radix.k))
    return residuals
