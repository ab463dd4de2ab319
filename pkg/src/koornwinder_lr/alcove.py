"""
Alcove walks and colored alcove walks.

A walk of type ``(i_1, ..., i_r)`` beginning at ``zA`` is encoded by its bit
sequence: ``b_k = 1`` crosses the ``k``-th wall, ``b_k = 0`` folds back.
With ``v_{k-1}`` the element such that the walk sits at ``v_{k-1} A`` before
step ``k``, the wall of the step is the hyperplane of
``gamma_k = v_{k-1}(alpha_{i_k})``.

Sign conventions (the edge-sign rule: the ``vA`` side of the wall of
``gamma`` is ``+`` iff the finite part of ``gamma`` is a positive root):

* a crossing is positive when it goes from the ``-`` side to the ``+``
  side, i.e. when ``gamma_k`` has a negative finite part;
* a folding is positive when the walk stays on a ``+`` side, i.e. when
  ``gamma_k`` has a positive finite part;
* a step is a descent when ``gamma_k`` is a negative affine root.

>>> from .weyl import identity
>>> spec = WalkSpec((1, 2, 1, 0), identity(2))
>>> sum(1 for _ in enumerate_walks(spec))
16
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .weyl import (
    AffineRoot,
    AffineWeylElem,
    affine_act_root,
    element_to_json,
    identity,
    in_dominant_chamber,
    is_positive,
    length_and_word,
    min_coset_rep,
    simple_reflection,
    simple_root,
    word_to_element,
)

__all__ = [
    "WalkSpec",
    "AlcoveWalk",
    "StepInfo",
    "ColoredWalk",
    "enumerate_walks",
    "classify_steps",
    "end_data",
    "EndData",
    "color_walks",
    "straighten_reverse",
    "walk_to_json",
]


class NonReducedWordError(ValueError):
    pass


@dataclass(frozen=True)
class WalkSpec:
    word: tuple
    start: AffineWeylElem
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.check:
            n = self.start.rank
            g = word_to_element(n, self.word)
            if length_and_word(g)[0] != len(self.word):
                raise NonReducedWordError(f"word {self.word} is not reduced")

    @property
    def rank(self) -> int:
        return self.start.rank


@dataclass(frozen=True)
class AlcoveWalk:
    spec: WalkSpec
    bits: tuple

    def elements(self) -> list:
        """``[v_0, v_1, ..., v_r]`` with ``p_k = v_k A``."""
        n = self.spec.rank
        v = self.spec.start
        out = [v]
        for i, b in zip(self.spec.word, self.bits):
            if b:
                v = v * simple_reflection(n, i)
            out.append(v)
        return out

    def end(self) -> AffineWeylElem:
        return self.elements()[-1]

    def folds(self) -> tuple:
        return tuple(k for k, b in enumerate(self.bits) if not b)


@dataclass(frozen=True)
class StepInfo:
    """One step of a walk.

    ``root`` is ``v_{k-1}(alpha_{i_k})``; ``hyperplane`` is the positive one
    of the two roots ``+-root`` carrying the same wall.
    """

    kind: str  # "crossing" | "folding"
    sign: str  # "positive" | "negative"
    direction: str  # "ascent" | "descent"
    hyperplane: AffineRoot
    root: AffineRoot
    letter: int

    @property
    def positive(self) -> bool:
        return self.sign == "positive"


@dataclass(frozen=True)
class ColoredWalk:
    walk: AlcoveWalk
    colors: tuple  # one entry per folding, "black" | "gray", in step order

    def color_of(self) -> dict:
        return dict(zip(self.walk.folds(), self.colors))


def _fin_positive(fin) -> bool:
    for a in fin:
        if a:
            return a > 0
    return False


def _step(v: AffineWeylElem, i: int, bit: int) -> StepInfo:
    gamma = affine_act_root(v, simple_root(v.rank, i))
    fin_pos = _fin_positive(gamma.fin)
    if bit:
        sign = "negative" if fin_pos else "positive"
    else:
        sign = "positive" if fin_pos else "negative"
    direction = "ascent" if is_positive(gamma) else "descent"
    hyper = gamma if is_positive(gamma) else -gamma
    return StepInfo("crossing" if bit else "folding", sign, direction, hyper, gamma, i)


def classify_steps(p: AlcoveWalk) -> list:
    """Per-step :class:`StepInfo` list."""
    vs = p.elements()
    return [_step(vs[k], i, b) for k, (i, b) in enumerate(zip(p.spec.word, p.bits))]


def folding_sets(p: AlcoveWalk) -> tuple:
    """``(phi_+, phi_-, xi_des)`` as sets of 1-based step indices."""
    plus, minus, xdes = set(), set(), set()
    for k, s in enumerate(classify_steps(p), start=1):
        if s.kind == "folding":
            (plus if s.positive else minus).add(k)
        elif s.direction == "descent":
            xdes.add(k)
    return plus, minus, xdes


def enumerate_walks(spec: WalkSpec, filter: str = "all") -> Iterator[AlcoveWalk]:
    """All walks of ``spec`` in lexicographic bit order (folds first).

    ``filter="dominant_chamber"`` keeps walks whose every alcove, the first
    one included, lies in the dominant chamber.
    """
    if filter not in ("all", "dominant_chamber"):
        raise ValueError(f"unknown filter {filter!r}")
    n = spec.rank
    word = spec.word
    chamber = filter == "dominant_chamber"
    if chamber and not in_dominant_chamber(spec.start):
        return
    r = len(word)
    bits = [0] * r

    def rec(k, v):
        if k == r:
            yield AlcoveWalk(spec, tuple(bits))
            return
        for b in (0, 1):
            w = v * simple_reflection(n, word[k]) if b else v
            if b and chamber and not in_dominant_chamber(w):
                continue
            bits[k] = b
            yield from rec(k + 1, w)

    yield from rec(0, spec.start)


@dataclass(frozen=True)
class EndData:
    e: AffineWeylElem
    wt: tuple
    dir: AffineWeylElem
    varpi: tuple | None


def end_data(p: AlcoveWalk) -> EndData:
    """``e(p) = t(wt) dir`` and, when defined, ``varpi`` with ``e(p)^{-1} = w(varpi)``."""
    e = p.end()
    wt = e.trans
    d = AffineWeylElem((0,) * e.rank, e.fin)
    inv = e.inverse()
    varpi = inv.trans
    if min_coset_rep(varpi) != inv:
        varpi = None
    return EndData(e, wt, d, varpi)


def color_walks(p: AlcoveWalk) -> Iterator[ColoredWalk]:
    nf = len(p.folds())
    for colors in itertools.product(("black", "gray"), repeat=nf):
        yield ColoredWalk(p, colors)


def straightened_bits(p: ColoredWalk) -> tuple:
    """Bits ``c_k``: gray foldings become crossings, black ones stay."""
    colors = p.color_of()
    return tuple(
        1 if (b or colors[k] == "gray") else 0 for k, b in enumerate(p.walk.bits)
    )


def straighten_reverse(p: ColoredWalk) -> AlcoveWalk:
    """The walk ``p*`` of reversed type ending at ``A``.

    Its ``j``-th step corresponds to step ``r + 1 - j`` of ``p``.
    """
    word = p.walk.spec.word
    n = p.walk.spec.rank
    c = straightened_bits(p)
    start = identity(n)
    for i, b in zip(word, c):
        if b:
            start = start * simple_reflection(n, i)
    spec = WalkSpec(tuple(reversed(word)), start, check=False)
    return AlcoveWalk(spec, tuple(reversed(c)))


def walk_to_json(p) -> dict:
    if isinstance(p, ColoredWalk):
        out = walk_to_json(p.walk)
        out["colors"] = list(p.colors)
        return out
    return {
        "word": list(p.spec.word),
        "start": element_to_json(p.spec.start),
        "bits": list(p.bits),
        "colors": [],
    }
