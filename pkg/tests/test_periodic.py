import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from periodic_pitman import (ColumnSequence, InvalidInputError, NumericFailureError, OutOfWindowError,
                             PeriodicVector, VectorPair, apply_Pk, beta_scaled_P, braid_components,
                             cyclic_sum_closed, cyclic_sum_half_open, frak_D, frak_T, jacobian_abs_det,
                             pitman_D, pitman_P, pitman_T, shift_tau, symbol_sum, transform_pair, zt_D, zt_P,
                             zt_T)


def pv(*xs):
    return PeriodicVector(xs)


# mpmath oracle: the defining sums written out term by term ----------------

def _mp_cyclic(y, start, length):
    n = len(y)
    return mp.fsum(y[(start + t - 1) % n] for t in range(length))


def mp_pitman(x1, x2):
    """(T, D) from explicit loops over cyclic windows at 50 digits."""
    with mp.workdps(50):
        n = len(x1)
        x1 = [mp.mpf(v) for v in x1]
        x2 = [mp.mpf(v) for v in x2]
        y = [x2[l % n] - x1[l - 1] for l in range(1, n + 1)]  # Y_l = X2_{l+1} - X1_l

        def closed(i):  # log sum_j exp Y_[i, j] over one period of j
            return mp.log(mp.fsum(mp.exp(_mp_cyclic(y, i, m + 1)) for m in range(n)))

        def half(i):  # log sum_j exp Y_(i, j], the empty sum contributing exp(0)
            return mp.log(mp.fsum(mp.exp(_mp_cyclic(y, i + 1, m)) for m in range(n)))

        T = [x1[(i - 2) % n] + closed(i - 1) - closed(i) for i in range(1, n + 1)]
        D = [x2[i % n] + half(i) - half(i - 1) for i in range(1, n + 1)]
        return [float(v) for v in T], [float(v) for v in D]


def test_mp_oracle_matches_transform_on_small_inputs():
    rng = np.random.default_rng(11)
    for n in range(1, 6):
        x1, x2 = rng.uniform(-4, 4, (2, n))
        T, D = mp_pitman(x1, x2)
        assert np.allclose(pitman_T(PeriodicVector(x1), PeriodicVector(x2)).entries, T, rtol=0, atol=1e-13)
        assert np.allclose(pitman_D(PeriodicVector(x1), PeriodicVector(x2)).entries, D, rtol=0, atol=1e-13)


# cyclic sums -------------------------------------------------------------

@pytest.mark.parametrize("i,j,expected", [(1, 1, 0.0), (1, 3, 5.0), (3, 2, 3.0), (2, 2, 0.0), (3, 1, 1.0)])
def test_half_open_sums(i, j, expected):
    assert cyclic_sum_half_open(pv(1, 2, 3), i, j) == expected


@pytest.mark.parametrize("i,j,expected", [(2, 2, 2.0), (1, 3, 6.0), (3, 1, 4.0), (2, 1, 6.0)])
def test_closed_sums(i, j, expected):
    assert cyclic_sum_closed(pv(1, 2, 3), i, j) == expected


def test_labels_wrap_both_ways():
    x = pv(1, 2, 3)
    assert x[0] == 3 and x[4] == 1 and x[-2] == 1
    assert cyclic_sum_half_open(x, 4, 6) == cyclic_sum_half_open(x, 1, 3)


def test_symbol_sum_and_shift():
    assert symbol_sum(pv(0, 0, 0, 0)) == 0
    assert symbol_sum(pv(1, 2, 3)) == 6
    assert shift_tau(pv(1, 2, 3), 1) == pv(2, 3, 1)
    assert shift_tau(pv(1, 2, 3), 0) == pv(1, 2, 3)
    assert shift_tau(pv(1, 2, 3), 3) == pv(1, 2, 3)


def test_vector_validation():
    with pytest.raises(InvalidInputError):
        PeriodicVector([])
    with pytest.raises(InvalidInputError):
        PeriodicVector([1.0, float("nan")])
    with pytest.raises(InvalidInputError):
        pitman_T(pv(1, 2), pv(1, 2, 3))
    with pytest.raises(InvalidInputError):
        VectorPair(pv(1), pv(1, 2))


# transform values --------------------------------------------------------

def test_period_one_values():
    assert pitman_T(pv(2.5), pv(-1.0)) == pv(2.5)
    assert pitman_D(pv(2.5), pv(-1.0)) == pv(-1.0)
    assert pitman_P(VectorPair(pv(2.5), pv(-1.0))) == VectorPair(pv(-1.0), pv(2.5))
    assert zt_T(pv(2.5), pv(-1.0)) == pv(2.5)
    assert zt_D(pv(2.5), pv(-1.0)) == pv(-1.0)


def test_zero_input_is_fixed():
    assert pitman_T(pv(0, 0), pv(0, 0)) == pv(0, 0)
    assert pitman_D(pv(0, 0), pv(0, 0)) == pv(0, 0)


def test_n2_against_oracle():
    T, D = mp_pitman([1, 0], [0, 1])
    assert T == pytest.approx([0.0, 1.0], abs=1e-15)
    assert D == pytest.approx([1.0, 0.0], abs=1e-15)
    assert np.allclose(pitman_T(pv(1, 0), pv(0, 1)).entries, T, rtol=0, atol=1e-15)
    assert np.allclose(pitman_D(pv(1, 0), pv(0, 1)).entries, D, rtol=0, atol=1e-15)


def test_n3_frozen_values():
    # frozen from the 50-digit oracle above
    x1, x2 = pv(0.5, -1.25, 2.0), pv(1.5, 0.25, -0.75)
    T = [1.5749613149880350139, 0.31253920262324298442, -0.63750051761127799833]
    D = [0.42503868501196498609, -1.3125392026232429844, 1.8875005176112779983]
    assert np.allclose(pitman_T(x1, x2).entries, T, rtol=0, atol=1e-14)
    assert np.allclose(pitman_D(x1, x2).entries, D, rtol=0, atol=1e-14)
    assert zt_T(x1, x2) == pv(1.5, 0.25, -0.5)
    assert zt_D(x1, x2) == pv(0.5, -1.25, 1.75)


def test_beta_one_matches_positive_and_large_beta_approaches_zero_temperature():
    rng = np.random.default_rng(3)
    w = VectorPair(PeriodicVector(rng.uniform(-3, 3, 4)), PeriodicVector(rng.uniform(-3, 3, 4)))
    assert beta_scaled_P(w, 1.0).max_abs_diff(pitman_P(w)) < 1e-14
    for beta in (10.0, 1e3, 1e6):
        assert beta_scaled_P(w, beta).max_abs_diff(zt_P(w)) <= math.log(4) / beta + 1e-12
    with pytest.raises(InvalidInputError):
        beta_scaled_P(w, 0.0)


def test_large_inputs_do_not_overflow():
    t, d = transform_pair(np.array([800.0, -900.0, 0.0]), np.array([-700.0, 1000.0, 5.0]))
    assert np.all(np.isfinite(t)) and np.all(np.isfinite(d))


# operators on column sequences -----------------------------------------

def test_apply_pk_swaps_for_period_one():
    seq = ColumnSequence(0, [pv(1.0), pv(2.0), pv(3.0), pv(4.0)])
    out = apply_Pk(seq, 1)
    assert [v[1] for v in out] == [1.0, 3.0, 2.0, 4.0]


def test_apply_pk_window_and_mixed_periods():
    seq = ColumnSequence(0, [pv(1, 2), pv(3, 4)])
    with pytest.raises(OutOfWindowError):
        apply_Pk(seq, 1)
    with pytest.raises(OutOfWindowError):
        seq[5]
    with pytest.raises(InvalidInputError):
        ColumnSequence(0, [pv(1, 2), pv(3)])


def test_apply_pk_touches_only_two_columns():
    rng = np.random.default_rng(5)
    seq = ColumnSequence.from_array(-2, rng.normal(size=(5, 3)))
    out = apply_Pk(seq, -1)
    for k in (-2, 1, 2):
        assert out[k] == seq[k]
    assert apply_Pk(out, -1).max_abs_diff(seq) < 1e-12


def test_nested_d_identity():
    rng = np.random.default_rng(8)
    for n in range(1, 7):
        x1, x2, x3 = rng.uniform(-5, 5, (3, n))
        lhs = transform_pair(x1, transform_pair(x2, x3)[1])[1]
        t12, d12 = transform_pair(x1, x2)
        rhs = transform_pair(d12, transform_pair(t12, x3)[1])[1]
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_frak_period_one():
    assert frak_T(pv(3.0), pv(-2.0)) == pv(3.0)
    assert frak_D(pv(3.0), pv(-2.0)) == pv(-2.0)


# jacobian ---------------------------------------------------------------

def test_jacobian_examples():
    assert jacobian_abs_det(VectorPair(pv(0.3), pv(-1.2))) == pytest.approx(1.0, abs=1e-9)
    assert abs(jacobian_abs_det(VectorPair(pv(0, 0), pv(0, 0))) - 1) < 1e-6
    with pytest.raises(InvalidInputError):
        jacobian_abs_det(VectorPair(pv(0.0), pv(0.0)), h=0)


def test_jacobian_numeric_failure_on_tiny_step():
    with pytest.raises(NumericFailureError):
        jacobian_abs_det(VectorPair(pv(1e8, 0), pv(0, -1e8)), h=1e-300)


# property tests -----------------------------------------------------------

def pairs(lo=-10.0, hi=10.0, max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(arrays(float, n, elements=st.floats(lo, hi)), arrays(float, n, elements=st.floats(lo, hi))))


def rel(a, b):
    return np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b))))


@settings(max_examples=200, deadline=None)
@given(pairs())
def test_involution(p):
    w1, w2 = p
    t, d = transform_pair(w2, w1)
    t2, d2 = transform_pair(d, t)
    assert np.max(np.abs(t2 - w1)) <= 1e-10 and np.max(np.abs(d2 - w2)) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(pairs(0.0, 10.0))
def test_zero_temperature_involution(p):
    w1, w2 = p
    t, d = transform_pair(w2, w1, "zero")
    t2, d2 = transform_pair(d, t, "zero")
    assert np.max(np.abs(t2 - w1)) <= 1e-12 and np.max(np.abs(d2 - w2)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(pairs(), st.sampled_from(["positive", "zero"]))
def test_identities(p, mode):
    x1, x2 = p
    t, d = transform_pair(x1, x2, mode)
    assert rel(t.sum(), x1.sum()) <= 1e-12 and rel(d.sum(), x2.sum()) <= 1e-12
    assert rel(t + d, x1 + x2) <= 1e-12
    ts, ds = transform_pair(np.roll(x1, -1), np.roll(x2, -1), mode)
    assert rel(ts, np.roll(t, -1)) <= 1e-12 and rel(ds, np.roll(d, -1)) <= 1e-12
    if mode == "positive":
        X1, X2s = PeriodicVector(x1), shift_tau(PeriodicVector(x2), 1)
        assert rel(d, frak_D(X1, X2s).entries) <= 1e-12
        assert rel(t, shift_tau(frak_T(X1, X2s), -1).entries) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(pairs())
def test_exponential_identity(p):
    x1, x2 = p
    t, d = transform_pair(x1, x2)
    lhs = np.exp(-d) + np.exp(-np.roll(t, -1))
    rhs = np.exp(-x1) + np.exp(-np.roll(x2, -1))
    assert np.max(np.abs(lhs - rhs) / rhs) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: arrays(float, (3, n), elements=st.floats(-10, 10))),
       st.sampled_from(["positive", "zero"]))
def test_braid(w, mode):
    for lhs, rhs in braid_components(w[0], w[1], w[2], mode):
        assert rel(lhs, rhs) <= 1e-9
    seq = ColumnSequence.from_array(0, w)
    a = apply_Pk(apply_Pk(apply_Pk(seq, 0, mode), 1, mode), 0, mode)
    b = apply_Pk(apply_Pk(apply_Pk(seq, 1, mode), 0, mode), 1, mode)
    assert rel(a.as_array(), b.as_array()) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(pairs(-5.0, 5.0), st.sampled_from([1.0, 10.0, 1e3, 1e6]))
def test_beta_bound(p, beta):
    w1, w2 = p
    tb, db = transform_pair(w2, w1, "beta", beta)
    tz, dz = transform_pair(w2, w1, "zero")
    bound = math.log(len(w1)) / beta + 1e-12 * 5
    assert np.max(np.abs(tb - tz)) <= bound and np.max(np.abs(db - dz)) <= bound


@settings(max_examples=50, deadline=None)
@given(pairs(-5.0, 5.0, max_n=4))
def test_jacobian_is_volume_preserving(p):
    pair = VectorPair(PeriodicVector(p[0]), PeriodicVector(p[1]))
    assert abs(jacobian_abs_det(pair) - 1) <= 1e-5
