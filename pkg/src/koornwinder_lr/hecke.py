"""
The basic (Noumi) representation of the affine Hecke algebra of type
(C_n^vee, C_n) on Laurent polynomials, the operators built from it, and
the scalar structure functions that appear in every expansion formula.

Operators act on :class:`~koornwinder_lr.laurent.LaurentPoly` values
through a :class:`HeckeRep`, which fixes the rank and the coefficient
backend (exact field or rational evaluation point) and memoizes the
action of each ``T_i`` on monomials.

>>> rep = representation(1)
>>> f = LaurentPoly.constant(1, rep.B.one)
>>> rep.T(1, f) == f.scale(rep.B.mono(unit("tn", 1)))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coeff_field import (
    ExactBackend,
    DEFAULT_FIELD,
    Monomial,
    mono_add,
    mono_half,
    mono_scale,
    unit,
)
from .laurent import LaurentPoly
from .weyl import (
    AffineRoot,
    AffineWeylElem,
    affine_act_root,
    finite_weyl_group,
    is_positive,
    length_and_word,
    longest_finite,
    simple_reflection,
    simple_root,
    t_weight_monomial,
    translation,
)

__all__ = [
    "HeckeRep",
    "representation",
    "SpectralVector",
    "spectral_value",
    "structure_scalar",
    "crossing_signs",
    "is_long",
    "t_name",
    "weyl_act_poly",
    "apply_T",
    "apply_Y",
    "apply_U",
    "apply_intertwiner_Y",
]

_ZERO6 = (0,) * 6


def t_name(i: int, n: int) -> str:
    """Name of the Hecke parameter ``t_i``."""
    if i == 0:
        return "t0"
    if i == n:
        return "tn"
    return "t"


def _x_pair(i: int, n: int):
    """``(t_i, u_i)`` of the x-side formulas; ``u_i = 1`` in the middle."""
    if i == 0:
        return "t0", "u0"
    if i == n:
        return "tn", "un"
    return "t", None


def _y_pair(i: int, n: int):
    """The x-side pair after applying the anti-involution (``u_n <-> t_0``)."""
    if i == 0:
        return "un", "u0"
    if i == n:
        return "tn", "t0"
    return "t", None


def is_long(beta: AffineRoot) -> bool:
    """Whether the finite part of ``beta`` is a long root ``+-2 eps_i``."""
    nz = [a for a in beta.fin if a]
    return len(nz) == 1 and abs(nz[0]) == 2


def crossing_signs(start: AffineWeylElem, word: Sequence[int]) -> list:
    """Signs of the steps of the straight walk of type ``word`` from ``start A``.

    The ``k``-th step crosses the hyperplane of ``v_{k-1}(alpha_{i_k})``; it
    is a positive crossing when the finite part of that root is negative,
    i.e. the walk leaves the ``-`` side of the edge for its ``+`` side.
    """
    n = start.rank
    v = start
    out = []
    for i in word:
        gamma = affine_act_root(v, simple_root(n, i))
        out.append(1 if _fin_negative(gamma.fin) else -1)
        v = v * simple_reflection(n, i)
    return out


def _fin_negative(fin) -> bool:
    for a in fin:
        if a:
            return a < 0
    raise ValueError("zero finite part")


# ---------------------------------------------------------------------------
# spectral vectors


@dataclass(frozen=True)
class SpectralVector:
    """Eigenvalues of ``Y^{eps_1}, ..., Y^{eps_n}`` as doubled monomials.

    ``value(beta)`` is the eigenvalue of ``Y^beta`` with ``Y^delta = q^{-1}``.
    """

    eig: tuple

    @property
    def rank(self) -> int:
        return len(self.eig)

    @classmethod
    def of_one(cls, n: int) -> "SpectralVector":
        """Spectral vector of the constant polynomial ``1``."""
        eig = []
        for j in range(1, n + 1):
            m = [0] * 6
            m[1] = 2 * (n - j)
            m[2] = 1
            m[3] = 1
            eig.append(tuple(m))
        return cls(tuple(eig))

    def value(self, beta: AffineRoot) -> Monomial:
        m = list(unit("q", -beta.twok))
        for a, e in zip(beta.fin, self.eig):
            if a:
                for k in range(6):
                    m[k] += a * e[k]
        return tuple(m)

    def half(self, beta: AffineRoot) -> Monomial:
        return mono_half(self.value(beta))

    def reflect(self, i: int) -> "SpectralVector":
        """Spectral vector of ``S_i^Y f`` given that of ``f``."""
        n = self.rank
        s = simple_reflection(n, i)
        eig = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            eig.append(self.value(affine_act_root(s, AffineRoot(tuple(e), 0))))
        return SpectralVector(tuple(eig))

    def act(self, g: AffineWeylElem) -> "SpectralVector":
        """Spectral vector after ``S_g^Y`` (``g`` applied to the argument)."""
        sv = self
        for i in reversed(length_and_word(g)[1]):
            sv = sv.reflect(i)
        return sv


def spectral_value(beta: AffineRoot, n: int | None = None, backend=None):
    """``q^{sh(beta)} t^{hgt(beta)}``, the eigenvalue of ``Y^beta`` on ``1``."""
    n = len(beta.fin) if n is None else n
    B = backend or ExactBackend()
    return B.mono(SpectralVector.of_one(n).value(beta))


# ---------------------------------------------------------------------------
# structure functions


def _h(B, name, k=1):
    return B.mono(unit(name, k))


def _phi_form(B, sign, a, b, zh):
    """``-+[(a^1/2 - a^-1/2) + z^{+-1/2}(b^1/2 - b^-1/2)] / (1 - z^{+-1})``."""
    z = zh * zh
    zs = zh if sign > 0 else 1 / zh
    num = _h(B, a) - _h(B, a, -1)
    if b is not None:
        num = num + zs * (_h(B, b) - _h(B, b, -1))
    den = (1 - z) if sign > 0 else (1 - 1 / z)
    return -num / den if sign > 0 else num / den


def _c_form(B, a, b, zh):
    z = zh * zh
    if b is None:
        return _h(B, a, -1) * (1 - _h(B, a, 2) * z) / (1 - z)
    return (
        _h(B, a, -1)
        * (1 - _h(B, b) * _h(B, a) * zh)
        * (1 + _h(B, b, -1) * _h(B, a) * zh)
        / (1 - z)
    )


def _n_form(B, a, b, zh):
    z = zh * zh
    if b is None:
        return (1 - _h(B, a, 2) * z) * (1 - _h(B, a, -2) * z) / ((1 - z) * (1 - z))
    first = (1 - _h(B, a) * _h(B, b) * zh) * (1 + _h(B, a) * _h(B, b, -1) * zh)
    second = (1 + _h(B, a, -1) * _h(B, b) * zh) * (1 - _h(B, a, -1) * _h(B, b, -1) * zh)
    return first * second / ((1 - z) * (1 - z))


def _rho_form(B, long_root, zh):
    z = zh * zh
    if long_root:
        return (
            _h(B, "tn")
            * (1 + _h(B, "t0") * _h(B, "tn", -1) * zh)
            * (1 - _h(B, "t0", -1) * _h(B, "tn", -1) * zh)
            / (1 - z)
        )
    return _h(B, "t") * (1 - _h(B, "t", -2) * z) / (1 - z)


STRUCTURE_KINDS = ("c", "d", "phi+", "phi-", "psi+", "psi-", "cvee", "n", "rho", "b")


def structure_scalar(kind: str, index, zh, n: int, backend=None):
    """Exact value of a structure function at ``z = zh^2``.

    ``index`` is the node ``0..n`` for every kind except ``rho`` and ``b``,
    where it is either an :class:`AffineRoot` or a boolean "long root" flag.
    ``zh`` is the square root of the argument as a backend element; the
    middle-node formulas only use ``zh^2``.
    """
    B = backend or ExactBackend()
    if kind in ("rho", "b"):
        long_root = is_long(index) if isinstance(index, AffineRoot) else bool(index)
        return _rho_form(B, long_root, zh)
    if kind == "c":
        return _c_form(B, *_x_pair(index, n), zh)
    if kind == "d":
        a, b = _x_pair(index, n)
        return _h(B, a) - _c_form(B, a, b, zh)
    if kind in ("phi+", "phi-"):
        return _phi_form(B, 1 if kind == "phi+" else -1, *_x_pair(index, n), zh)
    if kind in ("psi+", "psi-"):
        return _phi_form(B, 1 if kind == "psi+" else -1, *_y_pair(index, n), zh)
    if kind == "cvee":
        return _c_form(B, *_y_pair(index, n), zh)
    if kind == "n":
        return _n_form(B, *_y_pair(index, n), zh)
    raise ValueError(f"unknown structure function {kind!r}")


# ---------------------------------------------------------------------------
# the representation


class HeckeRep:
    """Operators of the basic representation in rank ``n`` over a backend."""

    def __init__(self, n: int, backend=None):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n
        self.B = backend or ExactBackend()
        self._tcache: dict = {}
        self._ycache: dict = {}
        self._scache: dict = {}
        self.memo: dict = {}  # per-representation caches of derived polynomials
        self._half_t = [self.B.mono(unit(t_name(i, n), 1)) for i in range(n + 1)]
        self._gap = [h - 1 / h for h in self._half_t]  # t^1/2 - t^-1/2

    # -- helpers -----------------------------------------------------------

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(self.n, self.B.one)

    def mono(self, wt, coeff=None) -> LaurentPoly:
        return LaurentPoly.monomial(wt, self.B.one if coeff is None else coeff)

    def scalar(self, kind, index, beta: AffineRoot, spec: SpectralVector):
        """A structure function evaluated at ``Y^beta`` on an eigenvector."""
        mid = _mid(kind, index, self.n)
        # middle-node and short-root formulas need z only, which need not be
        # a perfect square
        exps = spec.value(beta) if mid else spec.half(beta)
        key = (kind, index, mid, exps)
        hit = self._scache.get(key)
        if hit is None:
            if mid:
                hit = _mid_scalar(self.B, kind, self.B.mono(exps))
            else:
                hit = structure_scalar(kind, index, self.B.mono(exps), self.n, self.B)
            self._scache[key] = hit
        return hit

    # -- T_i ---------------------------------------------------------------

    def _local(self, i: int, lam: tuple) -> tuple:
        key = (i, lam)
        hit = self._tcache.get(key)
        if hit is not None:
            return hit
        n = self.n
        tn_, un_ = _x_pair(i, n)
        t_p, t_m = unit(tn_, 1), unit(tn_, -1)
        if i == 0:
            m = -lam[0]
            zw = tuple(-2 if k == 0 else 0 for k in range(n))
            zq = unit("q", 2)
            hw = tuple(-1 if k == 0 else 0 for k in range(n))
            hq = unit("q", 1)
        elif i == n:
            m = lam[n - 1]
            zw = tuple(2 if k == n - 1 else 0 for k in range(n))
            zq = _ZERO6
            hw = tuple(1 if k == n - 1 else 0 for k in range(n))
            hq = _ZERO6
        else:
            m = lam[i - 1] - lam[i]
            zw = tuple(1 if k == i - 1 else (-1 if k == i else 0) for k in range(n))
            zq = _ZERO6
            hw = hq = None
        if m > 0:
            powers = [(-j, 1) for j in range(1, m + 1)]
        elif m < 0:
            powers = [(j, -1) for j in range(0, -m)]
        else:
            powers = []
        acc: dict = {}

        def add(wt, pexp, c):
            slot = acc.setdefault(wt, {})
            slot[pexp] = slot.get(pexp, 0) + c

        add(lam, t_p, 1)
        for j, s in powers:
            wt = tuple(a + j * b for a, b in zip(lam, zw))
            pe = mono_scale(zq, j)
            # t^-1/2 N(z) = t^-1/2 + (u^-1/2 - u^1/2) z^1/2 - t^1/2 z
            add(wt, mono_add(pe, t_m), s)
            if un_ is not None:
                wh = tuple(a + b for a, b in zip(wt, hw))
                ph = mono_add(pe, hq)
                add(wh, mono_add(ph, unit(un_, -1)), s)
                add(wh, mono_add(ph, unit(un_, 1)), -s)
            add(tuple(a + b for a, b in zip(wt, zw)), mono_add(mono_add(pe, zq), t_p), -s)
        out = []
        for wt, terms in acc.items():
            terms = {e: c for e, c in terms.items() if c}
            if terms:
                out.append((wt, self.B.poly(terms)))
        out = tuple(out)
        self._tcache[key] = out
        return out

    def T(self, i: int, f: LaurentPoly, inverse: bool = False) -> LaurentPoly:
        """``T_i f`` (or ``T_i^{-1} f``) via the Dunkl operator."""
        out = LaurentPoly(self.n)
        for lam, c in f.terms.items():
            for wt, e in self._local(i, lam):
                out.add_term(wt, c * e)
        if inverse:
            # T^-1 = T - (t^1/2 - t^-1/2)
            out.iadd(f, -self._gap[i])
        return out

    def T_word(self, word: Sequence[int], f: LaurentPoly, signs=None) -> LaurentPoly:
        """``T_{i_1}^{e_1} ... T_{i_r}^{e_r} f`` (the rightmost factor acts first)."""
        signs = signs or [1] * len(word)
        for i, e in zip(reversed(word), reversed(signs)):
            f = self.T(i, f, inverse=e < 0)
        return f

    def _Ts(self, f, inverse):
        n = self.n
        word = list(range(1, n + 1)) + list(range(n - 1, 0, -1))
        return self.T_word(word, f, [(-1 if inverse else 1)] * len(word))

    def Tvee(self, i: int, f: LaurentPoly, inverse: bool = False) -> LaurentPoly:
        """``T_i^vee``: ``T_i`` for ``i >= 1`` and ``T_s^{-1} x_1^{-1}`` for ``i = 0``."""
        if i:
            return self.T(i, f, inverse)
        e1 = tuple(1 if k == 0 else 0 for k in range(self.n))
        if inverse:
            return self._Ts(f, inverse=False).shift(e1)
        return self._Ts(f.shift(tuple(-a for a in e1)), inverse=True)

    # -- Y, x^z, U ---------------------------------------------------------

    def y_word(self, lam: Sequence[int]) -> tuple:
        """``(word, signs)`` with ``Y^lam = T_{i_1}^{e_1} ... T_{i_r}^{e_r}``."""
        lam = tuple(lam)
        hit = self._ycache.get(lam)
        if hit is None:
            g = translation(lam)
            word = length_and_word(g)[1]
            start = translation((0,) * self.n)
            hit = (word, tuple(crossing_signs(start, word)))
            self._ycache[lam] = hit
        return hit

    def Y(self, lam: Sequence[int], f: LaurentPoly) -> LaurentPoly:
        word, signs = self.y_word(lam)
        return self.T_word(word, f, signs)

    def x_op(self, z: AffineWeylElem, f: LaurentPoly) -> LaurentPoly:
        """The operator ``x^z`` built from ``T^vee`` along the walk from ``zA`` to ``A``."""
        word = length_and_word(z.inverse())[1]
        signs = crossing_signs(z, word)
        for i, e in zip(word, signs):
            f = self.Tvee(i, f, inverse=e < 0)
        return f

    def T_finite(self, f: LaurentPoly) -> dict:
        """``{w: T_w f}`` for every ``w`` in the finite Weyl group."""
        out = {}
        for w in finite_weyl_group(self.n):
            word = length_and_word(w)[1]
            if not word:
                out[w] = f
                continue
            rest = simple_reflection(self.n, word[0]) * w
            out[w] = self.T(word[0], out[rest])
        return out

    def U(self, f: LaurentPoly) -> LaurentPoly:
        """The symmetrizer ``sum_w t_{w_0 w}^{-1/2} T_w``."""
        n = self.n
        tw0 = t_weight_monomial(n, length_and_word(longest_finite(n))[1])
        out = LaurentPoly(n)
        for w, g in self.T_finite(f).items():
            tw = t_weight_monomial(n, length_and_word(w)[1])
            # t_{w0 w} = t_{w0} / t_w; doubled exponents of t^{-1/2}
            e = tuple((b - a) // 2 for a, b in zip(tw0, tw))
            out.iadd(g, self.B.mono(e))
        return out

    def weyl_act(self, g: AffineWeylElem, f: LaurentPoly) -> LaurentPoly:
        """``x^lam -> q^m x^{w.lam}`` where ``g.lam = w.lam + m delta``."""
        out = LaurentPoly(self.n)
        for lam, c in f.terms.items():
            wl = g.fin.act(lam)
            pair = sum(a * b for a, b in zip(wl, g.trans))
            out.add_term(wl, c * self.B.mono(unit("q", -2 * pair)))
        return out

    # -- intertwiners ------------------------------------------------------

    def intertwiner(self, i: int, f: LaurentPoly, spec: SpectralVector):
        """``S_i^Y f = T_i^vee f + psi_i^+(Y^{-alpha_i}) f`` on an eigenvector."""
        beta = simple_root(self.n, i).__neg__()
        psi = self.scalar("psi+", i, beta, spec)
        out = self.Tvee(i, f)
        out.iadd(f, psi)
        return out, spec.reflect(i)

    def intertwiner_word(self, word: Sequence[int], f=None, spec=None):
        """``S_{i_1}^Y ... S_{i_r}^Y f`` (default ``f = 1``)."""
        if f is None:
            f = self.one()
            spec = SpectralVector.of_one(self.n)
        for i in reversed(word):
            f, spec = self.intertwiner(i, f, spec)
        return f, spec


def _mid(kind, index, n) -> bool:
    """Whether the formula only needs ``z`` (middle nodes, short roots)."""
    if kind in ("rho", "b"):
        long_root = is_long(index) if isinstance(index, AffineRoot) else bool(index)
        return not long_root
    return 0 < index < n


def _mid_scalar(B, kind, z):
    th = B.mono(unit("t", 1))
    gap = th - 1 / th
    if kind in ("psi+", "phi+"):
        return -gap / (1 - z)
    if kind in ("psi-", "phi-"):
        return gap / (1 - 1 / z)
    if kind in ("c", "cvee"):
        return (1 - th * th * z) / (th * (1 - z))
    if kind == "d":
        return th - (1 - th * th * z) / (th * (1 - z))
    if kind == "n":
        return (1 - th * th * z) * (1 - z / (th * th)) / ((1 - z) * (1 - z))
    if kind in ("rho", "b"):
        return th * (1 - z / (th * th)) / (1 - z)
    raise ValueError(f"unknown structure function {kind!r}")


@lru_cache(maxsize=None)
def _exact_rep(n: int) -> HeckeRep:
    return HeckeRep(n, ExactBackend(DEFAULT_FIELD))


def representation(n: int, backend=None) -> HeckeRep:
    """Shared exact representation of rank ``n`` or a fresh one over ``backend``."""
    if backend is None:
        return _exact_rep(n)
    return HeckeRep(n, backend)


# ---------------------------------------------------------------------------
# functional front ends


def weyl_act_poly(g: AffineWeylElem, f: LaurentPoly, rep=None) -> LaurentPoly:
    return (rep or representation(f.n)).weyl_act(g, f)


def apply_T(i: int, f: LaurentPoly, inverse: bool = False, rep=None) -> LaurentPoly:
    return (rep or representation(f.n)).T(i, f, inverse)


def apply_Y(lam: Sequence[int], f: LaurentPoly, rep=None) -> LaurentPoly:
    return (rep or representation(f.n)).Y(lam, f)


def apply_U(f: LaurentPoly, rep=None) -> LaurentPoly:
    return (rep or representation(f.n)).U(f)


def apply_intertwiner_Y(i: int, f: LaurentPoly, spec: SpectralVector, rep=None):
    return (rep or representation(f.n)).intertwiner(i, f, spec)
