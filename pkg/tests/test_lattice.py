import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodic_pitman import (InvalidInputError, MultiPathSpec, OutOfWindowError, PeriodicField,
                             PreconditionError, ResourceLimitError, UpRightPath, enumerate_paths,
                             from_cycles, invariance_harness, lpp_dp, lpp_multipath, multipath_partition,
                             partition_dp, partition_enumerate, partition_via_H, psi_check, usigma_check)
from periodic_pitman.lattice import count_paths
from periodic_pitman.suites import random_invariance_instance


def field(data, lo=0, col_period=None):
    return PeriodicField.from_array(lo, np.asarray(data, dtype=float), col_period)


def test_path_enumeration_examples():
    assert len(enumerate_paths((0, 0), (0, 0))) == 1
    assert len(enumerate_paths((0, 0), (2, 2))) == 6
    assert enumerate_paths((0, 1), (0, 0)) == []
    with pytest.raises(ResourceLimitError):
        enumerate_paths((0, 0), (12, 12), cap=1000)
    with pytest.raises(InvalidInputError):
        UpRightPath(((0, 0), (1, 1)))


def test_multipath_spec_validation():
    with pytest.raises(InvalidInputError):
        MultiPathSpec(((0, 0),), ((1, 1), (2, 2)))
    with pytest.raises(InvalidInputError):
        MultiPathSpec((), ())


def test_psi_examples():
    assert psi_check(MultiPathSpec.single((0, 0), (2, 2)))
    assert psi_check(MultiPathSpec(((0, 0), (0, 1)), ((1, 0), (1, 1))))
    assert not psi_check(MultiPathSpec(((0, 0), (1, 1)), ((2, 2), (3, 3))))
    with pytest.raises(ResourceLimitError):
        psi_check(MultiPathSpec(tuple((0, i) for i in range(5)), tuple((1, i) for i in range(5))))


def test_partition_examples():
    f = field(np.zeros((3, 3)))
    assert partition_dp(f, (1, 1), (2, 2)) == pytest.approx(math.log(2))
    g = field([[0.5, -1.0, 2.0]], lo=4)
    assert partition_dp(g, (4, 1), (4, 3), beta=2.0) == pytest.approx(2 * 1.5)
    assert partition_dp(g, (4, 2), (4, 1)) == -math.inf
    with pytest.raises(OutOfWindowError):
        partition_dp(g, (3, 1), (4, 2))


def test_three_routes_agree():
    rng = np.random.default_rng(0)
    f = field(rng.uniform(-1, 1, (4, 3)), lo=2)
    for start, end in [((2, 1), (5, 6)), ((3, 0), (5, 2)), ((2, 4), (2, 7))]:
        a = partition_dp(f, start, end)
        b = partition_via_H(f, start, end)
        c = partition_enumerate(f, start, end)
        assert abs(math.expm1(a - c)) <= 1e-12 and abs(math.expm1(b - c)) <= 1e-12


def test_lpp_examples():
    assert lpp_dp(field(np.zeros((2, 2))), (0, 0), (1, 1)) == 0.0
    g = field([[0.5, -1.0, 2.0]])
    assert lpp_dp(g, (0, 1), (0, 3)) == 1.5
    rng = np.random.default_rng(1)
    f = field(rng.uniform(-1, 1, (3, 4)))
    brute = max(sum(f.weight(*p) for p in path.points) for path in enumerate_paths((0, 1), (2, 5)))
    assert lpp_dp(f, (0, 1), (2, 5)) == pytest.approx(brute, abs=1e-14)


def disjoint_count(spec):
    lists = [enumerate_paths(u, v) for u, v in spec.pairs()]
    return sum(1 for combo in itertools.product(*lists)
               if len({p for path in combo for p in path.points}) == sum(len(path) for path in combo))


def test_multipath_with_zero_weights_counts_disjoint_systems():
    f = field(np.zeros((3, 3)))
    spec = MultiPathSpec(((0, 0), (2, 0)), ((0, 2), (2, 2)))
    assert multipath_partition(f, spec) == pytest.approx(0.0)
    spec = MultiPathSpec(((0, 1), (1, 0)), ((1, 2), (2, 1)))
    assert disjoint_count(spec) == 3
    assert multipath_partition(f, spec, "enumerate") == pytest.approx(math.log(3), abs=1e-14)
    assert multipath_partition(f, spec, "lgv") == pytest.approx(math.log(3), abs=1e-14)


def test_lgv_requires_psi():
    f = field(np.zeros((4, 4)))
    spec = MultiPathSpec(((0, 0), (1, 1)), ((2, 2), (3, 3)))
    with pytest.raises(PreconditionError):
        multipath_partition(f, spec, "lgv")


def test_lgv_matches_enumeration_on_random_fields():
    rng = np.random.default_rng(2)
    spec = MultiPathSpec(((0, 2), (0, 1), (1, 0)), ((2, 4), (3, 3), (3, 2)))
    assert psi_check(spec)
    for _ in range(5):
        f = field(rng.uniform(-1, 1, (4, 3)))
        a = multipath_partition(f, spec, "enumerate")
        b = multipath_partition(f, spec, "lgv")
        assert abs(math.expm1(a - b)) <= 1e-10


def test_lpp_multipath_by_brute_force():
    rng = np.random.default_rng(3)
    f = field(rng.uniform(0, 2, (3, 3)))
    spec = MultiPathSpec(((0, 0), (0, 1)), ((2, 1), (2, 2)))
    lists = [enumerate_paths(u, v) for u, v in spec.pairs()]
    best = max(sum(f.weight(*p) for path in combo for p in path.points)
               for combo in itertools.product(*lists)
               if not set(combo[0].points) & set(combo[1].points))
    assert lpp_multipath(f, spec) == pytest.approx(best, abs=1e-14)


def test_usigma_examples():
    spec = MultiPathSpec(((1, 0), (2, 3)), ((10, 5), (11, 7)))
    assert usigma_check({}, spec)
    assert usigma_check(from_cycles((3, 5, 6), (8, 9)), spec)
    assert not usigma_check(from_cycles((2, 3)), MultiPathSpec.single((3, 0), (10, 5)))
    assert usigma_check(from_cycles((2, 3)), MultiPathSpec.single((1, 0), (4, 5)))
    assert not usigma_check(from_cycles((2, 3)), MultiPathSpec.single((1, 0), (2, 5)))
    assert not usigma_check(from_cycles((1, 2)), MultiPathSpec.single((0, 2), (5, 5)), axis="row")


def test_transpose_swaps_coordinates():
    rng = np.random.default_rng(4)
    f = field(rng.normal(size=(3, 2)), lo=1, col_period=3)
    t = f.transpose()
    for c in range(-2, 6):
        for r in range(-2, 5):
            assert t.weight(r, c) == f.weight(c, r)
    with pytest.raises(InvalidInputError):
        field(np.zeros((2, 2))).transpose()


def test_harness_examples():
    rng = np.random.default_rng(5)
    f = field(rng.uniform(-2, 2, (6, 4)))
    single = MultiPathSpec.single((0, 1), (5, 7))
    assert invariance_harness(f, [single], [])["max_relative"] == 0.0
    assert invariance_harness(f, [single], [2])["max_relative"] <= 1e-10
    multi = MultiPathSpec(((0, 1), (0, 2)), ((5, 3), (5, 4)))
    res = invariance_harness(f, [single, multi], [1, 3, 2], mode="zero")
    assert res["max_relative"] <= 1e-9


def test_harness_rejects_bad_endpoints():
    f = field(np.zeros((4, 2)))
    with pytest.raises(PreconditionError):
        invariance_harness(f, [MultiPathSpec.single((2, 1), (3, 2))], [1])
    with pytest.raises(PreconditionError):
        invariance_harness(f, [MultiPathSpec.single((0, 1), (1, 2))], [1])


def test_operator_at_an_end_column_can_change_the_partition_function():
    # the endpoint rule is needed: an initial point at column k+1 breaks invariance
    rng = np.random.default_rng(6)
    f = field(rng.uniform(-2, 2, (3, 3)))
    before = partition_dp(f, (1, 1), (2, 3))
    after = partition_dp(f.apply([0]), (1, 1), (2, 3))
    assert abs(math.expm1(after - before)) > 1e-3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariance_on_random_instances(seed):
    rng = np.random.default_rng(seed)
    f, ops, specs = random_invariance_instance(rng)
    assert count_paths(specs[0].U[0], specs[0].V[0]) >= 1
    for mode in ("positive", "zero"):
        assert invariance_harness(f, specs, ops, mode=mode)["max_relative"] <= 1e-9
