from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcladder.words import (
    BOTH,
    RIGHT,
    UP,
    all_words,
    d_transform,
    interleave,
    r_transform,
    reduce_composition,
    word_tilde,
    word_transforms,
    word_weight,
)


def test_letter_values():
    assert RIGHT == (1, 0) and UP == (0, 1) and BOTH == (1, 1)


@pytest.mark.parametrize("length,count", [(0, 1), (1, 3), (2, 9), (3, 27)])
def test_word_count(length, count):
    assert len(list(all_words(length))) == count


def test_reduce_composition():
    assert reduce_composition((2, 0, 1)) == (2, 1)
    assert reduce_composition((0, 0)) == ()
    assert reduce_composition(()) == ()
    with pytest.raises(ValueError):
        reduce_composition((1, -1))


def test_transforms_on_pair():
    # k = (1,1): the three branches of the recursion
    assert r_transform((1, 1), (BOTH,)) == (0, 0)
    assert word_tilde((BOTH,)) == (1,)
    assert word_weight((BOTH,)) == 1
    assert r_transform((1, 1), (RIGHT,)) == (0, 1)
    assert word_tilde((RIGHT,)) == (0,)
    assert r_transform((1, 1), (UP,)) == (1, 0)


def test_interleave():
    assert interleave((1, 2, 3), (7, 8)) == (1, 7, 2, 8, 3)
    assert interleave((5,), ()) == (5,)
    with pytest.raises(ValueError):
        interleave((1, 2), (1, 2))


def test_word_transforms_bundle():
    d, r, tilde, weight = word_transforms((1, 1), (BOTH,))
    assert r == (0, 0) and tilde == (1,) and weight == 1
    # r undoes d after adding one to every part
    assert d == (1, 1)
    assert r_transform(tuple(x + 1 for x in d), (BOTH,)) == (1, 1)


@given(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda s: st.tuples(
            st.tuples(*[st.integers(min_value=-2, max_value=4)] * s),
            st.tuples(*[st.sampled_from([RIGHT, UP, BOTH])] * (s - 1)),
        )
    )
)
def test_round_trip_r_after_d(data):
    k, w = data
    d = d_transform(k, w)
    assert r_transform(tuple(x + 1 for x in d), w) == k


def test_round_trip_exhaustive_small():
    for s in (1, 2, 3):
        for w in all_words(s - 1):
            for k in product(range(4), repeat=s):
                d = d_transform(k, w)
                assert r_transform(tuple(x + 1 for x in d), w) == k
