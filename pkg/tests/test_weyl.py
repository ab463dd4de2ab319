import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from koornwinder_lr.coeff_field import DEFAULT_FIELD as K
from koornwinder_lr.suites import tep_word
from koornwinder_lr.weyl import (
    AffineRoot,
    affine_act_root,
    bruhat_cover_direction,
    dominant_rep,
    finite_weyl_group,
    identity,
    inversion_set,
    is_dominant,
    is_positive,
    length,
    length_and_word,
    longest_finite,
    min_coset_rep,
    orbit_and_param,
    random_element,
    simple_reflection,
    simple_root,
    stabilizer_data,
    translation,
    word_to_element,
)


def eps(n, i, c=1):
    return tuple(c if k == i else 0 for k in range(n))


def test_finite_reflections():
    assert simple_reflection(2, 1).fin.act((1, 0)) == (0, 1)
    assert simple_reflection(2, 2).fin.act((0, 1)) == (0, -1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_longest_element_negates(n):
    w0 = max(finite_weyl_group(n), key=lambda g: length_and_word(g)[0])
    assert w0 == longest_finite(n)
    for lam in itertools.product(range(-2, 3), repeat=n):
        assert w0.fin.act(lam) == tuple(-a for a in lam)


def test_affine_actions_on_roots():
    s0 = simple_reflection(2, 0)
    assert affine_act_root(s0, simple_root(2, 0)) == -simple_root(2, 0)
    assert affine_act_root(translation((1, 0)), AffineRoot((2, 0), 0)) == AffineRoot((2, 0), -4)
    assert affine_act_root(s0, AffineRoot((1, 0), 0)) == AffineRoot((-1, 0), 2)


def test_positivity():
    assert is_positive(simple_root(2, 1))
    assert is_positive(AffineRoot((-2, 0), 2))
    assert not is_positive(AffineRoot((-1, 0), 0))


def test_orbits_and_parameters():
    assert orbit_and_param(simple_root(2, 2)) == ("O_tn", K.gen("tn", 2))
    assert orbit_and_param(simple_root(2, 0)) == ("O_t0", K.gen("t0", 2))
    assert orbit_and_param(AffineRoot((1, 0), 1)) == ("O_u0", K.gen("u0", 2))


def test_lengths_and_words():
    assert length_and_word(identity(2)) == (0, ())
    ln, word = length_and_word(translation((1, 0)))
    assert ln == 4 and sorted(word) == [0, 1, 1, 2]
    assert length_and_word(min_coset_rep((1, 1)))[0] == 3


@pytest.mark.parametrize("n", [2, 3])
def test_displayed_translation_words(n):
    for i in range(1, n + 1):
        word = tep_word(n, i)
        g = word_to_element(n, word)
        assert g == translation(eps(n, i - 1))
        assert length_and_word(g)[0] == len(word)


def test_inversion_sets():
    assert inversion_set(2, ()) == []
    assert inversion_set(2, (0,)) == [simple_root(2, 0)]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**9))
def test_inversion_set_size_is_length(n, seed):
    g = random_element(n, random.Random(seed))
    ln, word = length_and_word(g)
    assert ln == length(g)
    roots = inversion_set(n, word)
    assert len(set(roots)) == ln
    assert all(is_positive(r) for r in roots)


def test_descent_examples():
    assert bruhat_cover_direction(identity(2), 0) == "ascent"
    assert bruhat_cover_direction(simple_reflection(2, 0), 0) == "descent"


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**9), st.integers(0, 3))
def test_descent_consistent_with_length(n, seed, i):
    i = i % (n + 1)
    g = random_element(n, random.Random(seed))
    up = length_and_word(g * simple_reflection(n, i))[0] > length_and_word(g)[0]
    assert bruhat_cover_direction(g, i) == ("ascent" if up else "descent")


def test_min_coset_reps_rank1():
    s0, s1 = simple_reflection(1, 0), simple_reflection(1, 1)
    assert min_coset_rep((0,)) == identity(1)
    assert min_coset_rep((1,)) == s0
    for l in (2, 3):
        want = identity(1)
        for _ in range(l - 1):
            want = want * s0 * s1
        assert min_coset_rep((l,)) == want * s0


def test_stabilizers_rank2():
    e, s1, s2 = identity(2), simple_reflection(2, 1), simple_reflection(2, 2)
    d = stabilizer_data((1, 0))
    assert set(d.W_mu) == {e, s2}
    assert d.normalizer == K.gen("tn", -1) + K.gen("tn")
    assert set(stabilizer_data((1, 1)).W_upper) == {e, s2, s1 * s2, s2 * s1 * s2}
    regular = stabilizer_data((2, 1))
    assert regular.W_mu == (e,) and regular.poincare == K.one


def test_dominant_rep_examples():
    assert dominant_rep((1, 0)) == (1, 0)
    assert dominant_rep((-1, 0)) == (1, 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_dominant_rep_in_orbit(mu):
    orbit = {w.fin.act(tuple(mu)) for w in finite_weyl_group(len(mu))}
    plus = dominant_rep(mu)
    assert is_dominant(plus) and plus in orbit
