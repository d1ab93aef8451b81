import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodic_pitman import (IndexWindow, InvalidInputError, PeriodicField, PeriodicVector, TriangularMatrix,
                             build_delta, build_E, build_H, cancellation_probe, check_EH_inverse,
                             check_H_factorization, partition_dp, partition_enumerate, shift_tau, tri_multiply,
                             tri_product)
from periodic_pitman.matrices import identity, relative_deviation

E = math.e


def random_tri(rng, window):
    return TriangularMatrix(window, np.triu(rng.normal(size=(window.size, window.size))))


def test_build_E_examples():
    e = build_E(PeriodicVector([0.0]), IndexWindow(1, 2))
    assert e.data.tolist() == [[1.0, 1.0], [0.0, 1.0]]
    e = build_E(PeriodicVector([1.0, 2.0]), IndexWindow(1, 3))
    assert np.allclose(np.diag(e.data), [E, E**2, E])
    assert np.allclose(np.diag(e.data, 1), 1.0)
    neg = build_E(PeriodicVector([1.0, 2.0]), IndexWindow(1, 3), negate=True)
    assert np.allclose(np.diag(neg.data), [1 / E, E**-2, 1 / E])


def test_build_H_examples():
    h = build_H(PeriodicVector([0.0]), IndexWindow(1, 3))
    assert h.data.tolist() == np.triu(np.ones((3, 3))).tolist()
    h = build_H(PeriodicVector([1.0, 2.0]), IndexWindow(1, 2))
    assert np.allclose(h.data, [[E, E**3], [0, E**2]], rtol=1e-15)
    assert h[1, 2] == pytest.approx(E**3)
    with pytest.raises(IndexError):
        h[0, 1]


def test_sequence_inputs_must_fit_the_window():
    with pytest.raises(InvalidInputError):
        build_H([1.0, 2.0], IndexWindow(1, 3))
    assert build_H([1.0, 2.0, 3.0], IndexWindow(4, 6))[4, 6] == pytest.approx(math.exp(6.0))


def test_delta_signs_follow_labels():
    assert np.diag(build_delta(IndexWindow(0, 3)).data).tolist() == [-1.0, 1.0, -1.0, 1.0]


def test_triangular_validation():
    with pytest.raises(InvalidInputError):
        TriangularMatrix(IndexWindow(0, 1), [[1.0, 0.0], [1.0, 1.0]])
    with pytest.raises(InvalidInputError):
        TriangularMatrix(IndexWindow(0, 1), [[1.0, np.inf], [0.0, 1.0]])
    with pytest.raises(InvalidInputError):
        tri_multiply(identity(IndexWindow(0, 1)), identity(IndexWindow(1, 2)))
    with pytest.raises(InvalidInputError):
        IndexWindow(3, 2)


def test_multiply_matches_dense_product():
    rng = np.random.default_rng(0)
    win = IndexWindow(-2, 3)
    for _ in range(20):
        a, b = random_tri(rng, win), random_tri(rng, win)
        assert np.allclose(tri_multiply(a, b).data, a.data @ b.data, rtol=1e-14, atol=1e-14)
    assert np.array_equal((a @ identity(win)).data, a.data)


def test_diagonal_of_H_product():
    rng = np.random.default_rng(1)
    x, y = rng.normal(size=(2, 5))
    win = IndexWindow(1, 5)
    prod = build_H(x, win) @ build_H(y, win)
    assert np.allclose(np.diag(prod.data), np.exp(x + y), rtol=1e-15)


def test_eh_inverse_examples():
    assert check_EH_inverse(PeriodicVector([0.0]), IndexWindow(1, 4))["interior"] == 0.0
    assert check_EH_inverse(PeriodicVector([0.7]), IndexWindow(1, 1))["full"] < 1e-15
    rng = np.random.default_rng(2)
    res = check_EH_inverse(PeriodicVector(rng.uniform(-3, 3, 3)), IndexWindow(1, 8))
    assert res["interior"] <= 1e-12 and res["full"] <= 1e-12


def test_h_factorization_examples():
    res = check_H_factorization(PeriodicVector([0.4]), PeriodicVector([-1.1]), IndexWindow(1, 5))
    assert res["H_relative"] <= 1e-15 and res["E_relative"] <= 1e-15
    rng = np.random.default_rng(3)
    w1, w2 = (PeriodicVector(v) for v in rng.uniform(-2, 2, (2, 3)))
    res = check_H_factorization(w1, w2, IndexWindow(1, 9))
    assert res["H_relative"] <= 1e-10 and res["E_relative"] <= 1e-10


def test_h_product_is_the_partition_function():
    rng = np.random.default_rng(4)
    data = rng.uniform(-1, 1, (3, 2))
    field = PeriodicField.from_array(1, data)
    win = IndexWindow(1, 5)
    prod = tri_product(*(build_H(field.columns[c], win) for c in (1, 2, 3)))
    for b in range(1, 6):
        for d in range(b, 6):
            log_z = partition_enumerate(field, (1, b), (3, d))
            assert abs(math.expm1(math.log(prod[b, d]) - log_z)) <= 1e-12
            assert abs(math.expm1(partition_dp(field, (1, b), (3, d)) - log_z)) <= 1e-12


def test_cancellation_probe():
    y1, y2 = PeriodicVector([1.0, -1.0]), PeriodicVector([0.0, 0.0])
    assert cancellation_probe(y1, y2, y1, y2)["agree"]
    res = cancellation_probe(y1, y2, PeriodicVector([-1.0, 1.0]), y2)
    assert not res["agree"] and res["relative"] > 0.5
    z1 = PeriodicVector([0.3, -0.2, 1.4])
    z2 = PeriodicVector([0.5, 0.1, -0.7])
    assert not cancellation_probe(z1, z2, shift_tau(z1, 1), z2)["agree"]
    with pytest.raises(InvalidInputError):
        cancellation_probe(y1, y2, PeriodicVector([1.0, 1.0]), y2)


def test_relative_deviation_treats_zero_entries_as_equal():
    assert relative_deviation(np.zeros(3), np.zeros(3)) == 0.0
    assert relative_deviation(np.array([1.0, 0.0]), np.array([1.0, 1e-300])) == 1.0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 32), st.integers(-10, 10), st.randoms(use_true_random=False))
def test_factorizations_on_random_windows(n, size, lo, rnd):
    rng = np.random.default_rng(rnd.getrandbits(32))
    w1, w2 = (PeriodicVector(v) for v in rng.uniform(-2, 2, (2, n)))
    win = IndexWindow(lo, lo + size - 1)
    res = check_H_factorization(w1, w2, win)
    assert res["H_relative"] <= 1e-10 and res["E_relative"] <= 1e-10
    assert check_EH_inverse(w1, win)["interior"] <= 1e-12
