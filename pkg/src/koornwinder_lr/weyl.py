"""
Root data of type C_n, the affine root system of type (C_n^vee, C_n) and
the extended affine Weyl group ``W = t(P) x W_0``.

Conventions
-----------
* Weights are integer tuples in the basis ``eps_1 .. eps_n``.
* Simple roots: ``alpha_i = eps_i - eps_{i+1}`` (``1 <= i < n``),
  ``alpha_n = 2 eps_n`` and ``alpha_0 = delta - 2 eps_1``.
* An affine root ``alpha + k delta`` is an :class:`AffineRoot` with the
  delta coefficient stored doubled (``twok = 2k``), so the dual roots
  ``+-eps_i + (m/2) delta`` are exact.
* ``g = t(lam) w`` acts on affine functions by
  ``g.(mu + m delta) = w.mu + (m - <w.mu, lam>) delta`` and on points by
  ``x -> w.x + lam``; ``s_0 = t(eps_1) s_{2 eps_1}``.
* The fundamental alcove is ``A = {1/2 > x_1 > ... > x_n > 0}``.

>>> n = 2
>>> g = translation((1, 0))
>>> length_and_word(g)
(4, (0, 1, 2, 1))
>>> affine_act_root(simple_reflection(n, 0), simple_root(n, 0))
AffineRoot(fin=(2, 0), twok=-2)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .coeff_field import FieldElem, DEFAULT_FIELD, unit, Monomial

__all__ = [
    "AffineRoot",
    "FiniteWeylElem",
    "AffineWeylElem",
    "ORBITS",
    "identity",
    "translation",
    "finite_element",
    "simple_reflection",
    "simple_root",
    "finite_act",
    "affine_act_root",
    "act_point",
    "is_positive",
    "root_sign",
    "is_root",
    "orbit",
    "orbit_and_param",
    "param_monomial",
    "length",
    "length_and_word",
    "word_to_element",
    "inversion_set",
    "inversion_sets",
    "symmetric_difference",
    "bruhat_cover_direction",
    "is_descent",
    "min_coset_rep",
    "finite_weyl_group",
    "longest_finite",
    "stabilizer_data",
    "StabilizerData",
    "dominant_rep",
    "is_dominant",
    "barycenter",
    "in_dominant_chamber",
    "element_to_json",
    "element_from_json",
    "random_element",
]


class AffineRoot(NamedTuple):
    """``fin + (twok/2) delta``, an affine function on h*_R."""

    fin: tuple
    twok: int

    def __neg__(self):
        return AffineRoot(tuple(-a for a in self.fin), -self.twok)

    def __add__(self, other):
        return AffineRoot(
            tuple(a + b for a, b in zip(self.fin, other.fin)), self.twok + other.twok
        )

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return sum(a * b for a, b in zip(self.fin, x)) + Fraction(self.twok, 2)


@dataclass(frozen=True)
class FiniteWeylElem:
    """Signed permutation ``w.eps_i = signs[i] * eps_{perm[i]}`` (0-based)."""

    perm: tuple
    signs: tuple

    @property
    def rank(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "FiniteWeylElem") -> "FiniteWeylElem":
        # (w v).eps_i = w.(sv_i eps_{pv(i)}) = sv_i sw_{pv(i)} eps_{pw(pv(i))}
        perm = tuple(self.perm[j] for j in other.perm)
        signs = tuple(s * self.signs[j] for s, j in zip(other.signs, other.perm))
        return FiniteWeylElem(perm, signs)

    def inverse(self) -> "FiniteWeylElem":
        n = len(self.perm)
        perm = [0] * n
        signs = [0] * n
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            perm[j] = i
            signs[j] = s
        return FiniteWeylElem(tuple(perm), tuple(signs))

    def act(self, lam: Sequence) -> tuple:
        out = [0] * len(lam)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = s * lam[i]
        return tuple(out)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and all(
            j == i for i, j in enumerate(self.perm)
        )


@dataclass(frozen=True)
class AffineWeylElem:
    """The element ``t(trans) * fin`` of the extended affine Weyl group."""

    trans: tuple
    fin: FiniteWeylElem

    @property
    def rank(self) -> int:
        return len(self.trans)

    def __mul__(self, other: "AffineWeylElem") -> "AffineWeylElem":
        shifted = self.fin.act(other.trans)
        return AffineWeylElem(
            tuple(a + b for a, b in zip(self.trans, shifted)), self.fin * other.fin
        )

    def inverse(self) -> "AffineWeylElem":
        winv = self.fin.inverse()
        return AffineWeylElem(tuple(-a for a in winv.act(self.trans)), winv)

    def is_identity(self) -> bool:
        return not any(self.trans) and self.fin.is_identity()

    def is_finite(self) -> bool:
        return not any(self.trans)


# ---------------------------------------------------------------------------
# constructors


def _finite_identity(n: int) -> FiniteWeylElem:
    return FiniteWeylElem(tuple(range(n)), (1,) * n)


def identity(n: int) -> AffineWeylElem:
    return AffineWeylElem((0,) * n, _finite_identity(n))


def translation(lam: Sequence[int]) -> AffineWeylElem:
    lam = tuple(lam)
    return AffineWeylElem(lam, _finite_identity(len(lam)))


def finite_element(w: FiniteWeylElem) -> AffineWeylElem:
    return AffineWeylElem((0,) * w.rank, w)


@lru_cache(maxsize=None)
def simple_reflection(n: int, i: int) -> AffineWeylElem:
    """``s_i`` for ``0 <= i <= n``."""
    perm = list(range(n))
    signs = [1] * n
    if 1 <= i < n:
        perm[i - 1], perm[i] = i, i - 1
        return finite_element(FiniteWeylElem(tuple(perm), tuple(signs)))
    if i == n:
        signs[n - 1] = -1
        return finite_element(FiniteWeylElem(tuple(perm), tuple(signs)))
    if i == 0:
        signs[0] = -1
        trans = (1,) + (0,) * (n - 1)
        return AffineWeylElem(trans, FiniteWeylElem(tuple(perm), tuple(signs)))
    raise ValueError(f"no simple reflection s_{i} in rank {n}")


@lru_cache(maxsize=None)
def simple_root(n: int, i: int) -> AffineRoot:
    fin = [0] * n
    if 1 <= i < n:
        fin[i - 1], fin[i] = 1, -1
        return AffineRoot(tuple(fin), 0)
    if i == n:
        fin[n - 1] = 2
        return AffineRoot(tuple(fin), 0)
    if i == 0:
        fin[0] = -2
        return AffineRoot(tuple(fin), 2)
    raise ValueError(f"no simple root alpha_{i} in rank {n}")


def word_to_element(n: int, word: Iterable[int]) -> AffineWeylElem:
    g = identity(n)
    for i in word:
        g = g * simple_reflection(n, i)
    return g


# ---------------------------------------------------------------------------
# actions


def finite_act(w: FiniteWeylElem, lam: Sequence[int]) -> tuple:
    return w.act(lam)


def affine_act_root(g: AffineWeylElem, beta: AffineRoot) -> AffineRoot:
    """Image of an affine function ``beta`` under ``g``."""
    wmu = g.fin.act(beta.fin)
    pair = sum(a * b for a, b in zip(wmu, g.trans))
    return AffineRoot(wmu, beta.twok - 2 * pair)


def act_point(g: AffineWeylElem, x: Sequence) -> tuple:
    wx = g.fin.act(x)
    return tuple(a + b for a, b in zip(wx, g.trans))


def _fin_positive(fin: Sequence[int]) -> bool:
    for a in fin:
        if a:
            return a > 0
    return False


def is_positive(beta: AffineRoot) -> bool:
    """Positivity: ``twok > 0``, or ``twok = 0`` and ``fin`` is a positive root."""
    if beta.twok:
        return beta.twok > 0
    return _fin_positive(beta.fin)


def root_sign(beta: AffineRoot) -> str:
    return "positive" if is_positive(beta) else "negative"


def is_root(beta: AffineRoot) -> bool:
    """Membership in the affine root system of type (C_n^vee, C_n)."""
    nz = [a for a in beta.fin if a]
    if len(nz) == 2:
        return all(abs(a) == 1 for a in nz) and beta.twok % 2 == 0
    if len(nz) == 1:
        a = abs(nz[0])
        return a == 1 or (a == 2 and beta.twok % 2 == 0)
    return False


ORBITS = ("O_t", "O_t0", "O_tn", "O_u0", "O_un")

_ORBIT_PARAM = {"O_t": "t", "O_t0": "t0", "O_tn": "tn", "O_u0": "u0", "O_un": "un"}


def orbit(beta: AffineRoot) -> str:
    """W-orbit of an affine root, named by its parameter."""
    if not is_root(beta):
        raise ValueError(f"{beta} is not an affine root")
    nz = [abs(a) for a in beta.fin if a]
    if len(nz) == 2:
        return "O_t"
    if nz[0] == 2:
        # long root 2 eps_i + k delta: k even -> alpha_n orbit, k odd -> alpha_0
        return "O_tn" if (beta.twok // 2) % 2 == 0 else "O_t0"
    return "O_un" if beta.twok % 2 == 0 else "O_u0"


def param_monomial(beta: AffineRoot, n: int | None = None) -> Monomial:
    """Doubled-exponent monomial of ``t_beta``."""
    return unit(_ORBIT_PARAM[orbit(beta)], 2)


def orbit_and_param(beta: AffineRoot) -> tuple:
    o = orbit(beta)
    return o, DEFAULT_FIELD.gen(_ORBIT_PARAM[o], 2)


# ---------------------------------------------------------------------------
# length and words


def is_descent(g: AffineWeylElem, i: int) -> bool:
    """``l(g s_i) < l(g)``, i.e. ``g(alpha_i)`` is negative."""
    return not is_positive(affine_act_root(g, simple_root(g.rank, i)))


def bruhat_cover_direction(g: AffineWeylElem, i: int) -> str:
    return "descent" if is_descent(g, i) else "ascent"


def length_and_word(g: AffineWeylElem) -> tuple:
    """Length and canonical reduced word by greedy right-stripping."""
    n = g.rank
    letters = []
    while True:
        for i in range(n + 1):
            if is_descent(g, i):
                letters.append(i)
                g = g * simple_reflection(n, i)
                break
        else:
            break
    if any(g.trans) or not g.fin.is_identity():
        # length-zero elements are trivial for the group generated by s_0..s_n
        raise ValueError("element is not in the group generated by s_0, ..., s_n")
    letters.reverse()
    return len(letters), tuple(letters)


def length(g: AffineWeylElem) -> int:
    """Length as the number of hyperplanes between ``A`` and ``gA``.

    Independent of :func:`length_and_word`; used to cross-check it.
    """
    n = g.rank
    x = act_point(g, barycenter(n))
    total = 0
    for alpha in positive_finite_roots(n):
        val = sum(a * b for a, b in zip(alpha, x))
        # walls of alpha: <alpha, x> in Z (long roots 2 eps_i included)
        total += abs(_floor(val))
    return total


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


@lru_cache(maxsize=None)
def positive_finite_roots(n: int) -> tuple:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, s
                out.append(tuple(v))
        v = [0] * n
        v[i] = 2
        out.append(tuple(v))
    return tuple(out)


def inversion_set(n: int, word: Sequence[int]) -> list:
    """``L(w)`` for ``w = s_{i_1} ... s_{i_r}`` as an ordered list."""
    out = []
    g = identity(n)
    for i in word:
        out.append(affine_act_root(g, simple_root(n, i)))
        g = g * simple_reflection(n, i)
    return out


def symmetric_difference(a: Iterable, b: Iterable) -> set:
    return set(a) ^ set(b)


def inversion_sets(v: AffineWeylElem, w: AffineWeylElem) -> tuple:
    """``(L(v), L(v, w))`` computed from canonical reduced words."""
    n = v.rank
    lv = inversion_set(n, length_and_word(v)[1])
    lw = inversion_set(n, length_and_word(w)[1])
    return set(lv), symmetric_difference(lv, lw)


def min_coset_rep(mu: Sequence[int]) -> AffineWeylElem:
    """``w(mu)``, the shortest element of ``t(mu) W_0``."""
    g = translation(mu)
    n = g.rank
    while True:
        for i in range(1, n + 1):
            if is_descent(g, i):
                g = g * simple_reflection(n, i)
                break
        else:
            return g


# ---------------------------------------------------------------------------
# finite Weyl group and stabilizers


@lru_cache(maxsize=None)
def finite_weyl_group(n: int) -> tuple:
    """All of ``W_0`` as finite elements, sorted by (length, word)."""
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            out.append(finite_element(FiniteWeylElem(perm, signs)))
    out.sort(key=lambda g: length_and_word(g))
    return tuple(out)


@lru_cache(maxsize=None)
def longest_finite(n: int) -> AffineWeylElem:
    return finite_element(FiniteWeylElem(tuple(range(n)), (-1,) * n))


def is_dominant(mu: Sequence[int]) -> bool:
    n = len(mu)
    return all(mu[i] >= mu[i + 1] for i in range(n - 1)) and mu[n - 1] >= 0


def dominant_rep(mu: Sequence[int]) -> tuple:
    return tuple(sorted((abs(a) for a in mu), reverse=True))


def t_weight_monomial(n: int, word: Sequence[int]) -> Monomial:
    """``t_w`` for a reduced word, as a doubled-exponent monomial."""
    total = [0] * 6
    for beta in inversion_set(n, word):
        for k, e in enumerate(param_monomial(beta)):
            total[k] += e
    return tuple(total)


@dataclass(frozen=True)
class StabilizerData:
    mu: tuple
    W_mu: tuple
    w_mu: AffineWeylElem
    W_upper: tuple
    v_mu: AffineWeylElem
    poincare: FieldElem
    t_half: FieldElem

    @property
    def normalizer(self) -> FieldElem:
        """``t_{w_mu}^{-1/2} W_mu(t)``, the factor dividing ``U E_mu``."""
        return self.t_half * self.poincare


@lru_cache(maxsize=None)
def stabilizer_data(mu: tuple) -> StabilizerData:
    mu = tuple(mu)
    if not is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    n = len(mu)
    W0 = finite_weyl_group(n)
    stab = [w for w in W0 if w.fin.act(mu) == mu]
    gens = [i for i in range(1, n + 1) if simple_reflection(n, i).fin.act(mu) == mu]
    upper = [w for w in W0 if all(not is_descent(w, i) for i in gens)]
    w_mu = max(stab, key=lambda g: length_and_word(g)[0])
    v_mu = max(upper, key=lambda g: length_and_word(g)[0])
    K = DEFAULT_FIELD
    poincare = K.zero
    for u in stab:
        poincare = poincare + K.monomial(t_weight_monomial(n, length_and_word(u)[1]))
    tw = t_weight_monomial(n, length_and_word(w_mu)[1])
    t_half = K.monomial(tuple(-e // 2 for e in tw))
    return StabilizerData(mu, tuple(stab), w_mu, tuple(upper), v_mu, poincare, t_half)


# ---------------------------------------------------------------------------
# alcove geometry


@lru_cache(maxsize=None)
def barycenter(n: int) -> tuple:
    """Average of the vertices ``0, (1/2,0,..), (1/2,1/2,0,..), ..`` of A."""
    coords = []
    for i in range(n):
        # vertex k (k = 0..n) has its first k coordinates 1/2
        count = sum(1 for k in range(n + 1) if i < k)
        coords.append(Fraction(count, 2 * (n + 1)))
    return tuple(coords)


def in_dominant_chamber(g: AffineWeylElem) -> bool:
    """Whether the alcove ``gA`` lies in the dominant chamber."""
    y = act_point(g, barycenter(g.rank))
    n = len(y)
    return all(y[i] > y[i + 1] for i in range(n - 1)) and y[n - 1] > 0


# ---------------------------------------------------------------------------
# serialization and sampling


def element_to_json(g: AffineWeylElem) -> dict:
    return {"trans": list(g.trans), "perm": list(g.fin.perm), "signs": list(g.fin.signs)}


def element_from_json(obj: dict) -> AffineWeylElem:
    return AffineWeylElem(
        tuple(obj["trans"]), FiniteWeylElem(tuple(obj["perm"]), tuple(obj["signs"]))
    )


def random_element(n: int, rng: random.Random, max_trans: int = 2) -> AffineWeylElem:
    perm = list(range(n))
    rng.shuffle(perm)
    signs = tuple(rng.choice((1, -1)) for _ in range(n))
    trans = tuple(rng.randint(-max_trans, max_trans) for _ in range(n))
    return AffineWeylElem(trans, FiniteWeylElem(tuple(perm), signs))
