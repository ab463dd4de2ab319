import random

import pytest
from hypothesis import given, settings, strategies as st

from koornwinder_lr.alcove import (
    AlcoveWalk,
    NonReducedWordError,
    WalkSpec,
    classify_steps,
    color_walks,
    end_data,
    enumerate_walks,
    folding_sets,
    straighten_reverse,
    walk_to_json,
)
from koornwinder_lr.hecke import representation
from koornwinder_lr.koornwinder import _colored_terms
from koornwinder_lr.weyl import (
    identity,
    length_and_word,
    min_coset_rep,
    random_element,
    simple_reflection,
    simple_root,
    translation,
    word_to_element,
)


def count(spec, filter="all"):
    return sum(1 for _ in enumerate_walks(spec, filter))


def test_empty_word_has_one_walk():
    walks = list(enumerate_walks(WalkSpec((), identity(2))))
    assert len(walks) == 1 and walks[0].elements() == [identity(2)]


def test_non_reduced_word_rejected():
    with pytest.raises(NonReducedWordError):
        WalkSpec((1, 1), identity(2))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**9))
def test_walk_count_is_power_of_two(n, seed):
    g = random_element(n, random.Random(seed), max_trans=1)
    ln, word = length_and_word(g)
    if ln > 12:
        word = word[:12]
    assert count(WalkSpec(word, identity(n))) == 2 ** len(word)


def test_rank2_example_walks():
    spec = WalkSpec((1, 2, 1, 0), identity(2))
    e = identity(2)
    s0, s1, s2 = (simple_reflection(2, i) for i in range(3))
    shapes = [p.elements() for p in enumerate_walks(spec)]
    assert [e, e, s2, s2 * s1, s2 * s1 * s0] in shapes
    assert [e, s1, s1 * s2, s1 * s2 * s1, s1 * s2 * s1 * s0] in shapes


def test_straight_walk_has_no_foldings():
    spec = WalkSpec((0, 1, 2), identity(2))
    p = AlcoveWalk(spec, (1, 1, 1))
    plus, minus, _ = folding_sets(p)
    assert plus == minus == set()


def test_first_step_wall_is_simple_root():
    for i in range(3):
        p = AlcoveWalk(WalkSpec((i,), identity(2)), (1,))
        assert classify_steps(p)[0].hyperplane == simple_root(2, i)


def test_all_folding_walk_ends_at_start():
    z = simple_reflection(2, 1)
    spec = WalkSpec((0, 1, 2), z)
    assert AlcoveWalk(spec, (0, 0, 0)).end() == z


@pytest.mark.parametrize("lam", [(1, 0), (2, 1), (1, 1)])
def test_end_data_of_translation_walk(lam):
    word = tuple(reversed(length_and_word(translation(lam).inverse())[1]))
    p = AlcoveWalk(WalkSpec(word, identity(2), check=False), (1,) * len(word))
    ed = end_data(p)
    assert translation(ed.wt) * ed.dir == ed.e


def test_varpi_rank1():
    p = AlcoveWalk(WalkSpec((0,), identity(1)), (1,))
    assert p.end().inverse() == simple_reflection(1, 0)
    assert end_data(p).varpi == (1,)


def test_colorings():
    spec = WalkSpec((0, 1), identity(2))
    assert len(list(color_walks(AlcoveWalk(spec, (1, 1))))) == 1
    assert len(list(color_walks(AlcoveWalk(spec, (0, 0))))) == 4


def test_straighten_all_gray_fold_walk():
    word = (1, 2, 1, 0)
    p = AlcoveWalk(WalkSpec(word, identity(2)), (0, 0, 0, 0))
    gray = next(c for c in color_walks(p) if set(c.colors) == {"gray"})
    star = straighten_reverse(gray)
    assert star.bits == (1, 1, 1, 1)
    assert star.spec.word == tuple(reversed(word))
    assert star.spec.start == word_to_element(2, word)
    assert star.end() == identity(2)


def test_straighten_walk_without_foldings():
    word = (0, 1)
    p = AlcoveWalk(WalkSpec(word, identity(2)), (1, 1))
    (only,) = color_walks(p)
    star = straighten_reverse(only)
    assert star.elements() == list(reversed(p.elements()))


def test_rank2_example_colored_walks():
    terms = list(_colored_terms((1, 0), (1, 1), representation(2)))
    by_v = {}
    for t in terms:
        by_v.setdefault(t.v, []).append(t)
    assert len(by_v) == 4 and all(len(ts) == 3 for ts in by_v.values())
    shapes = {tuple(straighten_reverse(t.walk).elements()) for t in terms}
    assert len(shapes) == 2
    assert all(s[-1] == identity(2) for s in shapes)


def test_chamber_filter_subset():
    spec = WalkSpec(length_and_word(min_coset_rep((2, 1)))[1], identity(2))
    assert 0 < count(spec, "dominant_chamber") < count(spec)


def test_walk_json():
    p = AlcoveWalk(WalkSpec((0,), identity(1)), (0,))
    (c, _) = list(color_walks(p))
    out = walk_to_json(c)
    assert out["word"] == [0] and out["bits"] == [0] and out["colors"] == ["black"]
