import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodic_pitman import InvalidInputError, from_cycles, inversion_count, min_adjacent_decomposition
from periodic_pitman.perms import as_permutation, compose, inverse, product_of_transpositions, transposition


def test_decomposition_examples():
    assert min_adjacent_decomposition({}) == []
    assert min_adjacent_decomposition(transposition(4, 5)) == [4]
    cyc = from_cycles((1, 2, 3))
    ks = min_adjacent_decomposition(cyc)
    assert len(ks) == 2 == inversion_count(cyc)
    assert product_of_transpositions(ks) == cyc


def test_cycles_and_composition():
    sigma = from_cycles((3, 5, 6), (8, 9))
    assert sigma == {3: 5, 5: 6, 6: 3, 8: 9, 9: 8}
    assert compose(sigma, inverse(sigma)) == {}
    # (sigma tau)(i) = sigma(tau(i))
    assert compose(transposition(1, 2), transposition(2, 3)) == {1: 2, 2: 3, 3: 1}
    with pytest.raises(InvalidInputError):
        as_permutation({1: 2, 2: 2})
    with pytest.raises(InvalidInputError):
        from_cycles((1, 2), (2, 3))


@settings(max_examples=100, deadline=None)
@given(st.permutations(list(range(-2, 4))))
def test_decomposition_is_minimal_and_exact(perm):
    sigma = as_permutation(dict(zip(range(-2, 4), perm)))
    ks = min_adjacent_decomposition(sigma)
    assert product_of_transpositions(ks) == sigma
    assert len(ks) == inversion_count(sigma)


def test_inversion_count_by_enumeration():
    for perm in itertools.permutations(range(4)):
        sigma = dict(zip(range(4), perm))
        brute = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        assert inversion_count(sigma) == brute
