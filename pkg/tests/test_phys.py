import itertools

import numpy as np
import pytest

from qnumrep.arith import PairState, add_apply, successor_apply
from qnumrep.digits import DigitString, Radix, all_digit_strings, decode_number, encode_number, oracle_add
from qnumrep.errors import CapExceededError, DigitRangeError, RadixMismatchError
from qnumrep.matrices import successor_matrix
from qnumrep.phys import (
    LabelSets,
    MapPair,
    PhysState,
    conjugated_add_apply,
    conjugated_successor_apply,
    conjugated_successor_matrix,
    count_maps,
    enumerate_maps,
    number_of_state,
    path_length,
    wgd_apply,
    wgd_inverse_apply,
    wgd_matrix,
)


def labels(k, L):
    return LabelSets.default(Radix(k, L))


def ds(digits, k):
    return DigitString(Radix(k, len(digits)), tuple(digits))


def pull_back(maps, t):
    """``s(j) = d^-1(t(g(j)))``, evaluated straight from the definition."""
    return DigitString(
        maps.radix,
        tuple(maps.d.index(maps.labels.B.index(t[maps.site(j)])) for j in range(1, maps.radix.L + 1)),
    )


def test_identity_maps_relabel_verbatim():
    lab = labels(3, 3)
    maps = MapPair.identity(lab)
    t = wgd_apply(maps, ds((2, 0, 1), 3))
    assert t.assignment == {"a1": "b2", "a2": "b0", "a3": "b1"}


def test_reverse_g_example():
    maps = MapPair(labels(2, 2), g=(1, 0), d=(0, 1))
    t = wgd_apply(maps, ds((1, 0), 2))
    assert t.assignment == {"a1": "b0", "a2": "b1"}


def test_wgd_injective():
    lab = labels(3, 2)
    for maps in enumerate_maps(lab):
        images = {wgd_apply(maps, s) for s in all_digit_strings(lab.radix)}
        assert len(images) == 9


def test_size_mismatch():
    maps = MapPair.identity(labels(2, 2))
    with pytest.raises(RadixMismatchError):
        wgd_apply(maps, ds((0, 0, 0), 2))
    with pytest.raises(RadixMismatchError):
        wgd_inverse_apply(maps, PhysState(labels(2, 3), ("b0",) * 3))


def test_bijection_validation():
    with pytest.raises(DigitRangeError):
        MapPair(labels(2, 2), g=(0, 0), d=(0, 1))
    with pytest.raises(DigitRangeError):
        LabelSets(("a", "a"), ("x", "y"))
    with pytest.raises(DigitRangeError):
        PhysState(labels(2, 2), ("b0", "b7"))


@pytest.mark.parametrize("k, L", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_round_trip_and_adjoint_forms(k, L):
    lab = labels(k, L)
    for maps in enumerate_maps(lab):
        for s in all_digit_strings(lab.radix):
            t = wgd_apply(maps, s)
            assert wgd_inverse_apply(maps, t) == s
            assert pull_back(maps, t) == s
        for i in range(lab.radix.modulus):
            t = PhysState.from_index(lab, i)
            assert wgd_apply(maps, wgd_inverse_apply(maps, t)) == t


def test_adjoint_is_map_of_inverses():
    lab = labels(3, 3)
    for maps in enumerate_maps(lab):
        g_inv, d_inv = maps.inverse_indices()
        for i in range(27):
            t = PhysState.from_index(lab, i)
            s = wgd_inverse_apply(maps, t)
            # W_{g^-1,d^-1}: state at site a goes to component g^-1(a) as d^-1(t(a))
            for site_index, a in enumerate(lab.A):
                assert s[g_inv[site_index] + 1] == d_inv[lab.B.index(t[a])]


@pytest.mark.parametrize("k, L", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_intertwining_exhaustive(k, L):
    lab = labels(k, L)
    for maps in enumerate_maps(lab):
        for s in all_digit_strings(lab.radix):
            for j in range(1, L + 1):
                lhs = conjugated_successor_apply(maps, j, wgd_apply(maps, s))
                assert lhs == wgd_apply(maps, successor_apply(j, s))


def test_conjugated_successor_identity_maps():
    lab = labels(2, 3)
    maps = MapPair.identity(lab)
    for s in all_digit_strings(lab.radix):
        t = wgd_apply(maps, s)
        out = conjugated_successor_apply(maps, 1, t)
        assert out.values == tuple(f"b{h}" for h in successor_apply(1, s).digits)


def test_conjugated_successor_truth_table_k2_l2():
    maps = MapPair(labels(2, 2), g=(1, 0), d=(1, 0))
    # g sends component 1 -> a2, d swaps b0/b1; number of t is
    # (1 - bit(a2)) + 2 * (1 - bit(a1)) with bit(bX) = X.
    expected = {}
    for a1, a2 in itertools.product((0, 1), repeat=2):
        n = (1 - a2) + 2 * (1 - a1)
        m = (n + 1) % 4
        new_a2, new_a1 = 1 - (m % 2), 1 - (m // 2)
        expected[(f"b{a1}", f"b{a2}")] = (f"b{new_a1}", f"b{new_a2}")
    for before, after in expected.items():
        t = PhysState(maps.labels, before)
        assert conjugated_successor_apply(maps, 1, t).values == after


@pytest.mark.parametrize("k, L", [(2, 2), (2, 3), (3, 2)])
def test_conjugated_power_identity(k, L):
    lab = labels(k, L)
    for maps in enumerate_maps(lab):
        for i in range(lab.radix.modulus):
            t = PhysState.from_index(lab, i)
            for j in range(1, L + 1):
                powered = t
                for _ in range(k):
                    powered = conjugated_successor_apply(maps, j, powered)
                target = conjugated_successor_apply(maps, j + 1, t) if j < L else t
                assert powered == target


def test_conjugated_add():
    lab = labels(2, 2)
    identity = MapPair.identity(lab)
    for s, w in itertools.product(all_digit_strings(lab.radix), repeat=2):
        out = conjugated_add_apply(identity, (wgd_apply(identity, s), wgd_apply(identity, w)))
        plain = add_apply(PairState(s, w))
        assert out == (wgd_apply(identity, plain.left), wgd_apply(identity, plain.right))
    for maps in enumerate_maps(lab):
        zero_image = wgd_apply(maps, DigitString.zero(lab.radix))
        for i in range(4):
            t = PhysState.from_index(lab, i)
            assert conjugated_add_apply(maps, (zero_image, t)) == (zero_image, t)
            for i2 in range(4):
                t2 = PhysState.from_index(lab, i2)
                left, right = conjugated_add_apply(maps, (t, t2))
                assert left == t
                expected = oracle_add(number_of_state(maps, t), number_of_state(maps, t2), lab.radix)
                assert right == wgd_apply(maps, encode_number(expected, lab.radix))


@pytest.mark.parametrize("k, L, count", [(2, 3, 12), (2, 1, 2), (3, 3, 36), (3, 2, 12)])
def test_enumeration_counts(k, L, count):
    lab = labels(k, L)
    maps = list(enumerate_maps(lab))
    assert len(maps) == count == count_maps(lab)
    assert len({(m.g, m.d) for m in maps}) == count


def test_enumeration_order_and_cap():
    maps = list(enumerate_maps(labels(2, 2)))
    assert [(m.g, m.d) for m in maps] == [((0, 1), (0, 1)), ((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 0), (1, 0))]
    with pytest.raises(CapExceededError):
        next(enumerate_maps(labels(7, 2)))


def test_number_of_state_examples():
    lab = labels(2, 2)
    t = PhysState.from_assignment(lab, {"a1": "b1", "a2": "b0"})
    assert number_of_state(MapPair.identity(lab), t) == 1
    assert number_of_state(MapPair(lab, g=(1, 0), d=(0, 1)), t) == 2
    zero = PhysState(lab, ("b1", "b1"))
    for maps in enumerate_maps(lab):
        if maps.d[0] == 1:
            assert number_of_state(maps, zero) == 0


def test_map_dependence_witness():
    lab = labels(2, 2)
    witnesses = [
        i for i in range(4)
        if len({number_of_state(m, PhysState.from_index(lab, i)) for m in enumerate_maps(lab)}) > 1
    ]
    assert witnesses


@pytest.mark.parametrize("k, L", [(2, 3), (3, 2)])
def test_oracle_coherence(k, L):
    lab = labels(k, L)
    for maps in enumerate_maps(lab):
        for i in range(lab.radix.modulus):
            t = PhysState.from_index(lab, i)
            for j in range(1, L + 1):
                out = conjugated_successor_apply(maps, j, t)
                assert decode_number(wgd_inverse_apply(maps, out)) == oracle_add(
                    number_of_state(maps, t), k ** (j - 1), lab.radix
                )


def test_matrix_forms_agree():
    lab = labels(2, 3)
    for maps in enumerate_maps(lab):
        w = wgd_matrix(maps).entries
        for j in range(1, 4):
            v = successor_matrix(j, lab.radix).entries
            assert np.array_equal(conjugated_successor_matrix(maps, j).entries, w @ v @ w.T)


def test_path_length():
    lab = labels(2, 3)
    assert path_length(MapPair(lab, (0, 1, 2), (0, 1))) == 2
    assert path_length(MapPair(lab, (0, 2, 1), (0, 1))) == 3
    assert path_length(MapPair.identity(labels(2, 1))) == 0


def test_json_forms():
    lab = labels(2, 2)
    maps = MapPair(lab, (1, 0), (0, 1))
    assert maps.to_json() == {"g": [1, 0], "d": [0, 1], "A": ["a1", "a2"], "B": ["b0", "b1"]}
    assert PhysState(lab, ("b0", "b1")).to_json() == {"assignment": {"a1": "b0", "a2": "b1"}}
