import numpy as np
import pytest
import scipy.linalg

from qnumrep.digits import Radix, decode_number, encode_number
from qnumrep.errors import CapExceededError, DigitRangeError, NotUnitaryError
from qnumrep.matrices import (
    DenseOperator,
    add_matrix,
    check_unitary,
    conjugate_by,
    conjugation_invariance,
    extract_hamiltonian,
    haar_unitary,
    permutation_power,
    power_identity_residual,
    projector_matrix,
    roundtrip_residual,
    shift_matrix,
    successor_matrix,
    successor_matrix_literal,
)


def test_shift_matrix_examples():
    assert shift_matrix(1, Radix(2, 1)).entries.tolist() == [[0, 1], [1, 0]]
    u3 = shift_matrix(1, Radix(3, 1)).entries
    expected = np.zeros((3, 3), dtype=int)
    expected[1, 0] = expected[2, 1] = expected[0, 2] = 1
    assert np.array_equal(u3, expected)


@pytest.mark.parametrize("k, L", [(2, 3), (3, 2), (4, 2)])
def test_shift_matrix_period_and_action(k, L):
    radix = Radix(k, L)
    for j in range(1, L + 1):
        u = shift_matrix(j, radix).entries
        assert np.array_equal(np.linalg.matrix_power(u, k), np.eye(radix.modulus, dtype=int))
        for n in range(radix.modulus):
            s = encode_number(n, radix)
            image = s.replace(j, (s[j] + 1) % k)
            assert u[decode_number(image), n] == 1


def test_projector_examples():
    radix = Radix(2, 1)
    assert projector_matrix(1, 1, radix).entries.tolist() == [[0, 0], [0, 1]]
    radix = Radix(3, 2)
    for j in (1, 2):
        total = sum(projector_matrix(m, j, radix).entries for m in range(3))
        assert np.array_equal(total, np.eye(9, dtype=int))
        p = projector_matrix(2, j, radix).entries
        assert np.array_equal(p @ p, p)


def test_projector_rejects_bad_value():
    with pytest.raises(DigitRangeError):
        projector_matrix(3, 1, Radix(3, 1))


def test_literal_successor_examples():
    assert successor_matrix_literal(1, Radix(2, 1)).entries.tolist() == [[0, 1], [1, 0]]
    radix = Radix(2, 2)
    assert successor_matrix_literal(1, radix).permutation == (1, 2, 3, 0)
    assert successor_matrix_literal(2, radix).permutation == (2, 3, 0, 1)


@pytest.mark.parametrize("k, L", [(2, 4), (3, 3), (5, 2), (4, 3)])
def test_literal_matches_carry_chain(k, L):
    radix = Radix(k, L)
    for j in range(1, L + 1):
        literal = successor_matrix_literal(j, radix)
        carry = successor_matrix(j, radix)
        assert np.array_equal(literal.entries, carry.entries)


@pytest.mark.parametrize("k, L", [(2, 4), (3, 3)])
def test_commutation_relation_matrices(k, L):
    radix = Radix(k, L)
    for j in range(1, L + 1):
        u = shift_matrix(j, radix).entries
        for m in range(k):
            lhs = u @ projector_matrix(m, j, radix).entries
            rhs = projector_matrix((m + 1) % k, j, radix).entries @ u
            assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("k, L", [(2, 3), (3, 2)])
def test_factors_on_distinct_components_commute(k, L):
    radix = Radix(k, L)
    for m_ in range(1, L + 1):
        for n_ in range(1, L + 1):
            if m_ == n_:
                continue
            for p in range(k):
                for q in range(k):
                    a = shift_matrix(m_, radix).entries @ projector_matrix(p, m_, radix).entries
                    b = shift_matrix(n_, radix).entries @ projector_matrix(q, n_, radix).entries
                    assert np.array_equal(a @ b, b @ a)


def test_power_identity_integer_matrices():
    radix = Radix(3, 3)
    family = [successor_matrix_literal(j, radix).entries for j in range(1, 4)]
    assert power_identity_residual(family, 3) == 0
    perms = [successor_matrix(j, radix).permutation for j in range(1, 4)]
    assert permutation_power(perms[0], 3) == perms[1]
    assert permutation_power(perms[2], 3) == tuple(range(27))


def test_check_unitary_examples():
    result = check_unitary(successor_matrix_literal(2, Radix(2, 3)))
    assert result.ok and result.residual == 0
    assert not check_unitary(np.diag([1.0, 0.5])).ok
    assert check_unitary(shift_matrix(1, Radix(3, 2))).ok


def test_add_matrix_k2_l1():
    op = add_matrix(Radix(2, 1))
    # index = s + 2w: (0,0)->(0,0), (1,0)->(1,1), (0,1)->(0,1), (1,1)->(1,0)
    assert op.permutation == (0, 3, 2, 1)
    assert check_unitary(op).residual == 0


@pytest.mark.parametrize("k, L", [(2, 3), (3, 2), (4, 1)])
def test_add_matrix_left_register_fixed(k, L):
    radix = Radix(k, L)
    N = radix.modulus
    perm = add_matrix(radix).permutation
    for idx, image in enumerate(perm):
        s, w = idx % N, idx // N
        assert image % N == s
        assert image // N == (s + w) % N


def test_add_matrix_cap():
    with pytest.raises(CapExceededError):
        add_matrix(Radix(2, 7))


def test_dense_cap():
    with pytest.raises(CapExceededError):
        successor_matrix_literal(1, Radix(2, 13))


def test_hamiltonian_identity_is_zero():
    gen = extract_hamiltonian(np.eye(4), 1.0)
    assert np.allclose(gen.entries, 0, atol=1e-12)


def test_hamiltonian_of_swap():
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    gen = extract_hamiltonian(x, 1.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2)
    expected = np.pi * np.outer(minus, minus)
    assert np.max(np.abs(gen.entries - expected)) <= 1e-9
    assert np.linalg.norm(scipy.linalg.expm(-1j * gen.entries) - x) <= 1e-9


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
def test_hamiltonian_round_trip_successor(t):
    op = successor_matrix(1, Radix(2, 2))
    gen = extract_hamiltonian(op, t)
    assert gen.hermiticity_residual() <= 1e-10
    assert roundtrip_residual(gen, op) <= 1e-9
    eig = np.linalg.eigvalsh(gen.entries) * t
    assert np.all(eig > -np.pi - 1e-9) and np.all(eig <= np.pi + 1e-9)


def test_hamiltonian_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        extract_hamiltonian(np.diag([1.0, 0.5]))
    with pytest.raises(DigitRangeError):
        extract_hamiltonian(np.eye(2), 0.0)


def test_conjugate_by_examples():
    rng = np.random.default_rng(3)
    op = successor_matrix(1, Radix(2, 2))
    same = conjugate_by(op, np.eye(4))
    assert np.array_equal(same.entries, op.entries)
    u = haar_unitary(4, rng)
    conj = conjugate_by(op, u)
    assert check_unitary(conj).ok
    before = np.linalg.eigvals(op.entries.astype(complex))
    after = np.linalg.eigvals(conj.entries)
    distances = np.abs(before[:, None] - after[None, :])
    assert np.all(distances.min(axis=1) <= 1e-9) and np.all(distances.min(axis=0) <= 1e-9)


def test_conjugate_by_errors():
    with pytest.raises(DigitRangeError):
        conjugate_by(np.eye(2), np.eye(4))
    with pytest.raises(NotUnitaryError):
        conjugate_by(np.eye(2), np.diag([1.0, 2.0]))


def test_haar_unitary_is_unitary_and_seeded():
    a = haar_unitary(8, np.random.default_rng(11))
    b = haar_unitary(8, np.random.default_rng(11))
    assert np.array_equal(a, b)
    assert check_unitary(a).residual <= 1e-12


def test_conjugation_invariance_small():
    residuals = conjugation_invariance(Radix(2, 3), seed=0, count=5)
    assert len(residuals) == 5 and max(residuals) <= 1e-9
    with pytest.raises(CapExceededError):
        conjugation_invariance(Radix(2, 5))


def test_matrix_dump_formats():
    perm_dump = successor_matrix(1, Radix(2, 1)).to_json()
    assert perm_dump == {"dim": 2, "permutation": [1, 0]}
    dense = DenseOperator(np.array([[0, 1j], [1j, 0]])).to_json()
    assert dense == {"dim": 2, "entries": [[[0.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [0.0, 0.0]]]}
