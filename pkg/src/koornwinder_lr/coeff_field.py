"""
Exact coefficient field for Koornwinder computations.

Elements live in the field of rational functions in the square roots
``q^(1/2), t^(1/2), t0^(1/2), tn^(1/2), u0^(1/2), un^(1/2)``.  Every exponent
is stored *doubled*, so a monomial is a tuple of integers and ``t^(1/2)`` is
``(0, 1, 0, 0, 0, 0)``.  Polynomial arithmetic and gcds are delegated to
python-flint's ``fmpz_mpoly``.

A :class:`FieldElem` is kept in the normal form
``X^shift * num / (dc * prod f_i^e_i)`` where

* ``num`` is an integer polynomial without monomial content,
* the ``f_i`` are distinct irreducible integer polynomials with positive
  graded-lex leading coefficient, none of which divides ``num``,
* ``dc`` is a positive integer coprime to the content of ``num``.

This form is unique, so equality is a structural comparison.  Keeping the
denominator factored makes sums cheap: the common denominator is a
factor-wise maximum and reduction only tests the known factors, so no
polynomial gcd is ever needed.

Besides the exact field there is an evaluation backend: an
:class:`EvalPoint` assigns rational values to the half-generators and all
algebra is done with :class:`fractions.Fraction`.  Code that is generic over
the coefficient ring talks to a *backend* object (:class:`ExactBackend` or
:class:`EvalBackend`) which turns parameter monomials into ring elements.

>>> K = DEFAULT_FIELD
>>> x = K.monomial((0, 1, 0, 0, 0, 0)) - K.monomial((0, -1, 0, 0, 0, 0))
>>> format_canonical(x)
't^(1/2) - t^(-1/2)'
>>> parse_canonical(format_canonical(x)) == x
True
"""

from __future__ import annotations

import random
import re
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint
from flint.utils.flint_exceptions import DomainError

__all__ = [
    "GENERATORS",
    "Monomial",
    "PoleError",
    "Field",
    "FieldElem",
    "FieldSum",
    "Collector",
    "DEFAULT_FIELD",
    "EvalPoint",
    "ExactBackend",
    "EvalBackend",
    "unit",
    "mono_add",
    "mono_neg",
    "mono_scale",
    "mono_half",
    "field_equals",
    "substitute_q_zero",
    "substitute",
    "evaluate",
    "format_canonical",
    "parse_canonical",
    "to_json",
    "from_json",
]

GENERATORS = ("q", "t", "t0", "tn", "u0", "un")

Monomial = tuple  # doubled exponents, one integer per generator


class PoleError(ZeroDivisionError):
    """Raised when a specialization hits a pole of a rational function."""


# ---------------------------------------------------------------------------
# monomials


def unit(name: str, power: int = 1, names: Sequence[str] = GENERATORS) -> Monomial:
    """Doubled-exponent monomial for ``name^(power/2)``.

    >>> unit("t", 2)
    (0, 2, 0, 0, 0, 0)
    """
    idx = names.index(name)
    return tuple(power if i == idx else 0 for i in range(len(names)))


def mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_neg(a: Monomial) -> Monomial:
    return tuple(-x for x in a)


def mono_scale(a: Monomial, k: int) -> Monomial:
    return tuple(k * x for x in a)


def mono_half(a: Monomial) -> Monomial:
    """Square root of a monomial whose doubled exponents are all even."""
    if any(x % 2 for x in a):
        raise ValueError(f"monomial {a} has no square root in the field")
    return tuple(x // 2 for x in a)


# ---------------------------------------------------------------------------
# the field


class Field:
    """A field of rational functions in square-root generators.

    The default field uses :data:`GENERATORS`; tests that need a free
    argument ``z`` build ``Field(GENERATORS + ("z",))``.
    """

    _cache: dict = {}

    def __new__(cls, names: Sequence[str] = GENERATORS):
        names = tuple(names)
        if names in cls._cache:
            return cls._cache[names]
        self = super().__new__(cls)
        self.names = names
        self.nvars = len(names)
        self.ctx = flint.fmpz_mpoly_ctx.get(
            tuple(f"g{i}" for i in range(len(names))), "deglex"
        )
        self._zero_shift = (0,) * len(names)
        self._poly_one = self.ctx.constant(1)
        self._poly_zero = self.ctx.constant(0)
        self._factors: list = []
        self._factor_ids: dict = {}
        self.zero = FieldElem._raw(self, self._poly_zero, 1, (), self._zero_shift)
        self.one = FieldElem._raw(self, self._poly_one, 1, (), self._zero_shift)
        self._mono_cache: dict = {}
        cls._cache[names] = self
        return self

    def __repr__(self):
        return f"Field({self.names!r})"

    def __reduce__(self):
        return (Field, (self.names,))

    def _intern(self, poly) -> int:
        """Id of an irreducible denominator factor (positive leading term)."""
        key = str(poly)
        fid = self._factor_ids.get(key)
        if fid is None:
            fid = len(self._factors)
            self._factors.append(poly)
            self._factor_ids[key] = fid
        return fid

    def gen(self, name: str, power: int = 1) -> "FieldElem":
        """``name^(power/2)`` as a field element."""
        return self.monomial(unit(name, power, self.names))

    def monomial(self, exps: Sequence[int], coeff=1) -> "FieldElem":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            # allow short monomials from a smaller generator set
            exps = exps + (0,) * (self.nvars - len(exps))
        if coeff == 1:
            hit = self._mono_cache.get(exps)
            if hit is None:
                hit = FieldElem._raw(self, self._poly_one, 1, (), exps)
                self._mono_cache[exps] = hit
            return hit
        return self.monomial(exps) * coeff

    def const(self, c) -> "FieldElem":
        if isinstance(c, FieldElem):
            return c
        c = Fraction(c)
        if c == 0:
            return self.zero
        return FieldElem._raw(
            self, self.ctx.constant(c.numerator), c.denominator, (), self._zero_shift
        )

    def from_terms(self, terms: Mapping[Monomial, int]) -> "FieldElem":
        """Laurent polynomial with integer coefficients from ``{exps: coeff}``."""
        if not terms:
            return self.zero
        pad = (0,) * (self.nvars - len(next(iter(terms))))
        if pad:
            terms = {tuple(e) + pad: c for e, c in terms.items()}
        lo = [min(e[i] for e in terms) for i in range(self.nvars)]
        poly = self.ctx.from_dict(
            {tuple(x - l for x, l in zip(e, lo)): int(c) for e, c in terms.items() if c}
        )
        poly, shift = _split_monomial(self.ctx, poly, tuple(lo))
        return FieldElem._raw(self, poly, 1, (), shift)


def _poly_mono(ctx, exps):
    return ctx.term(exp_vec=tuple(exps), coeff=1)


def _iterms(poly):
    """Terms of a flint polynomial as ``(tuple of int, int)`` pairs."""
    for e, c in poly.terms():
        yield tuple(int(x) for x in e), int(c)


def _split_monomial(ctx, poly, shift, sign=1):
    """Move the monomial content of ``poly`` into ``shift``."""
    tc = poly.term_content()
    if tc.is_one():
        return poly, shift
    e = [int(x) for x in tc.monoms()[0]]
    return poly / _poly_mono(ctx, e), tuple(s + sign * x for s, x in zip(shift, e))


def _try_divide(num, f):
    try:
        return num / f
    except DomainError:
        return None


class FieldElem:
    """An element ``X^shift * num / (dc * prod f_i^e_i)`` of a :class:`Field`.

    ``fac`` is a sorted tuple of ``(factor id, exponent)`` pairs referring
    to irreducible integer polynomials interned in the field; ``dc`` is a
    positive integer.  In normal form ``num`` has no monomial content, is
    divisible by none of the factors and its content is coprime to ``dc``,
    which makes the representation unique.
    """

    __slots__ = ("field", "num", "dc", "fac", "shift")

    @classmethod
    def _raw(cls, field, num, dc, fac, shift):
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.dc = dc
        self.fac = fac
        self.shift = shift
        return self

    @classmethod
    def _reduce(cls, field, num, dc, fac, shift, candidates=None):
        """Normal form of ``X^shift * num / (dc * prod fac)``.

        ``fac`` is a ``{factor id: exponent}`` dict; only the factor ids in
        ``candidates`` (default: all of them) are tested against ``num``.
        """
        if num.is_zero():
            return field.zero
        factors = field._factors
        for fid in list(fac if candidates is None else candidates):
            e = fac.get(fid, 0)
            if not e:
                continue
            f = factors[fid]
            while e:
                qt = _try_divide(num, f)
                if qt is None:
                    break
                num = qt
                e -= 1
            if e:
                fac[fid] = e
            else:
                del fac[fid]
        if dc != 1:
            g = gcd(int(num.content()), dc)
            if g != 1:
                num = num / g
                dc //= g
        num, shift = _split_monomial(field.ctx, num, shift)
        return cls._raw(field, num, dc, tuple(sorted(fac.items())), shift)

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __neg__(self):
        return FieldElem._raw(self.field, -self.num, self.dc, self.fac, self.shift)

    def _aligned(self, lo, fac, dc):
        """``num`` brought over the common denominator ``dc * prod fac``."""
        field = self.field
        a = self.num
        if self.shift != lo:
            a = a * _poly_mono(field.ctx, [x - l for x, l in zip(self.shift, lo)])
        if self.fac != fac:
            mine = dict(self.fac)
            factors = field._factors
            for fid, e in fac:
                d = e - mine.get(fid, 0)
                if d:
                    a = a * factors[fid] ** d
        if self.dc != dc:
            a = a * (dc // self.dc)
        return a

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        field = self.field
        lo = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        if self.fac == other.fac:
            fac = self.fac
            candidates = None
        else:
            # Both operands are in normal form, so an irreducible factor whose
            # exponents differ divides exactly one aligned numerator and
            # cannot divide the sum; only equal exponents need a trial.
            merged = dict(self.fac)
            candidates = []
            for fid, e in other.fac:
                m = merged.get(fid, 0)
                if e > m:
                    merged[fid] = e
                elif e == m:
                    candidates.append(fid)
            fac = tuple(sorted(merged.items()))
        dc = self.dc if self.dc == other.dc else self.dc * other.dc // gcd(self.dc, other.dc)
        num = self._aligned(lo, fac, dc) + other._aligned(lo, fac, dc)
        return FieldElem._reduce(field, num, dc, dict(fac), lo, candidates)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.field.zero
        field = self.field
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        if not self.fac and not other.fac and self.dc == 1 and other.dc == 1:
            return FieldElem._raw(field, self.num * other.num, 1, (), shift)
        # cancel each numerator against the other's denominator first
        a, fa, sa = _cancel(field, self.num, other.fac, other.dc, shift)
        b, fb, sb = _cancel(field, other.num, self.fac, self.dc, (0,) * field.nvars)
        fac = dict(fa)
        for fid, e in fb.items():
            fac[fid] = fac.get(fid, 0) + e
        num = a * b
        dc = sa * sb
        return FieldElem._reduce(field, num, dc, fac, shift, candidates=())

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.num.is_zero():
            raise PoleError("inverse of zero")
        field = self.field
        c, parts = self.num.factor()
        c = int(c)
        fac = {}
        shift = tuple(-x for x in self.shift)
        for f, e in parts:
            e = int(e)
            if f.leading_coefficient() < 0:
                f = -f
                if e % 2:
                    c = -c
            fac[field._intern(f)] = e
        num = field.ctx.constant(self.dc if c > 0 else -self.dc)
        factors = field._factors
        for fid, e in self.fac:
            num = num * factors[fid] ** e
        return FieldElem._reduce(field, num, abs(c), fac, shift, candidates=())

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.field.one
        return FieldElem._raw(
            self.field, self.num ** k, self.dc ** k,
            tuple((fid, k * e) for fid, e in self.fac),
            tuple(k * x for x in self.shift),
        )

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return field_equals(self, other)

    def __hash__(self):
        # the normal form is canonical, so hashing it is consistent with ==
        return hash((self.field.names, str(self.num), self.dc, self.fac, self.shift))

    def __repr__(self):
        return f"FieldElem({format_canonical(self)!r})"

    def __str__(self):
        return format_canonical(self)

    # -- structure ----------------------------------------------------------

    @property
    def den(self):
        """The expanded denominator polynomial."""
        out = self.field.ctx.constant(self.dc)
        factors = self.field._factors
        for fid, e in self.fac:
            out = out * factors[fid] ** e
        return out

    def den_factors(self) -> list:
        """``[(poly, exponent), ...]`` of the irreducible denominator factors."""
        factors = self.field._factors
        return [(factors[fid], e) for fid, e in self.fac]

    def is_laurent(self) -> bool:
        return not self.fac and self.dc == 1

    def is_laurent_monomial(self) -> bool:
        return self.is_laurent() and self.num.is_one()

    def laurent_terms(self) -> dict:
        """``{exps: coeff}`` of the numerator with the shift applied."""
        out = {}
        for e, c in _iterms(self.num):
            out[tuple(a + b for a, b in zip(e, self.shift))] = c
        return out

    def den_terms(self) -> dict:
        return dict(_iterms(self.den))


def _cancel(field, num, fac, dc, shift):
    """Divide ``num`` by as much of ``dc * prod fac`` as possible."""
    out = {}
    factors = field._factors
    for fid, e in fac:
        f = factors[fid]
        while e:
            qt = _try_divide(num, f)
            if qt is None:
                break
            num = qt
            e -= 1
        if e:
            out[fid] = e
    if dc != 1:
        g = gcd(int(num.content()), dc)
        if g != 1:
            num = num / g
            dc //= g
    return num, out, dc


class FieldSum:
    """Accumulator for long sums of field elements.

    Terms are grouped by denominator and their numerators added without
    reduction; :meth:`value` brings everything over one common denominator
    and reduces once.

    >>> K = DEFAULT_FIELD
    >>> s = FieldSum(K)
    >>> for k in range(3):
    ...     s.add(K.gen("t", 2 * k) / (1 - K.gen("t", 2)))
    >>> s.value() == (1 + K.gen("t", 2) + K.gen("t", 4)) / (1 - K.gen("t", 2))
    True
    """

    __slots__ = ("field", "groups")

    def __init__(self, field: Field):
        self.field = field
        self.groups: dict = {}

    def add(self, x: FieldElem) -> None:
        if x.num.is_zero():
            return
        key = (x.fac, x.dc)
        g = self.groups.get(key)
        if g is None:
            self.groups[key] = [x.shift, x.num]
            return
        ctx = self.field.ctx
        lo = tuple(min(a, b) for a, b in zip(g[0], x.shift))
        a = g[1]
        if g[0] != lo:
            a = a * _poly_mono(ctx, [s - l for s, l in zip(g[0], lo)])
        b = x.num
        if x.shift != lo:
            b = b * _poly_mono(ctx, [s - l for s, l in zip(x.shift, lo)])
        g[0] = lo
        g[1] = a + b

    def add_product(self, factors: Sequence[FieldElem]) -> None:
        """Add ``prod(factors)`` without reducing the product first."""
        field = self.field
        num = field._poly_one
        dc = 1
        fac: dict = {}
        shift = field._zero_shift
        for x in factors:
            if x.num.is_zero():
                return
            if not x.num.is_one():
                num = num * x.num
            dc *= x.dc
            for fid, e in x.fac:
                fac[fid] = fac.get(fid, 0) + e
            if any(x.shift):
                shift = tuple(a + b for a, b in zip(shift, x.shift))
        self.add(FieldElem._raw(field, num, dc, tuple(sorted(fac.items())), shift))

    def value(self) -> FieldElem:
        """The reduced total.

        Groups are merged pairwise in a balanced tree, ordered by
        denominator, so that cancellations happen while the common
        denominators are still small.
        """
        field = self.field
        parts = sorted(
            (
                FieldElem._raw(field, num, dc, fac, shift)
                for (fac, dc), (shift, num) in self.groups.items()
                if not num.is_zero()
            ),
            key=lambda p: (p.fac, p.dc),
        )
        if not parts:
            return field.zero
        parts = [FieldElem._reduce(field, p.num, p.dc, dict(p.fac), p.shift) for p in parts]
        while len(parts) > 1:
            merged = [a + b for a, b in zip(parts[::2], parts[1::2])]
            if len(parts) % 2:
                merged.append(parts[-1])
            parts = merged
        return parts[0]


class Collector:
    """Per-key sums of products, for either backend.

    Exact products are accumulated unreduced in one :class:`FieldSum` per
    key; evaluation-backend products are plain rationals.
    """

    def __init__(self, backend):
        self.backend = backend
        self.sums: dict = {}

    def add(self, key, factors: Sequence) -> None:
        acc = self.sums.get(key)
        if self.backend.exact:
            if acc is None:
                acc = self.sums[key] = FieldSum(self.backend.field)
            acc.add_product(factors)
        else:
            c = Fraction(1)
            for f in factors:
                c *= f
            self.sums[key] = c if acc is None else acc + c

    def result(self) -> dict:
        """``{key: total}`` with zero totals dropped."""
        out = {}
        for key, acc in self.sums.items():
            v = acc.value() if self.backend.exact else acc
            if v:
                out[key] = v
        return out


DEFAULT_FIELD = Field(GENERATORS)


def field_equals(a: FieldElem, b: FieldElem) -> bool:
    """Decide ``a == b``; both operands are in the (unique) normal form."""
    return (
        a.shift == b.shift and a.dc == b.dc and a.fac == b.fac and a.num == b.num
    )


# ---------------------------------------------------------------------------
# specialization


def substitute_q_zero(x: FieldElem) -> FieldElem:
    """Image of ``x`` under ``q^(1/2) -> 0``; a pole at ``q = 0`` raises."""
    field = x.field
    qi = field.names.index("q")
    if x.is_zero():
        return x
    if x.shift[qi] < 0:
        raise PoleError("pole at q = 0")
    if x.shift[qi] > 0:
        return field.zero
    name = f"g{qi}"
    num = x.num.subs({name: 0})
    if num.is_zero():
        return field.zero
    num, shift = _split_monomial(field.ctx, num, x.shift)
    out = FieldElem._raw(field, num, 1, (), shift)
    for f, e in x.den_factors():
        fz = f.subs({name: 0})
        if fz.is_zero():
            raise PoleError("pole at q = 0")
        fz, fshift = _split_monomial(field.ctx, fz, field._zero_shift)
        out = out / FieldElem._raw(field, fz, 1, (), fshift) ** e
    return out / x.dc


def _map_laurent(poly, shift, images: Sequence, one):
    """``X^shift * poly`` with ``X_i -> images[i]`` (doubled exponents, even)."""
    total = 0 * one
    for e, c in _iterms(poly):
        term = one * c
        for img, k in zip(images, e):
            if k:
                term = term * img ** (k // 2)
        total = total + term
    for img, k in zip(images, shift):
        if k:
            total = total * img ** (k // 2)
    return total


def substitute(x: FieldElem, images: Mapping[str, FieldElem]) -> FieldElem:
    """Image of ``x`` under the homomorphism sending each generator
    ``g`` (the full power, not its square root) to ``images[g]``.

    ``x`` must involve only integral powers of its generators.

    >>> F = Field(("a", "b"))
    >>> a, b = F.gen("a", 2), F.gen("b", 2)
    >>> str(substitute(a / (1 - a * b), {"a": b, "b": b}))
    '(-b)/(b^2 - 1)'
    """
    names = x.field.names
    zero = (0,) * len(names)
    den = x.den
    exps = [x.shift] + [e for e, _ in _iterms(x.num)] + [e for e, _ in _iterms(den)]
    if any(k % 2 for e in exps for k in e):
        raise ValueError("substitute needs integral powers of the generators")
    imgs = [images[n] for n in names]
    one = imgs[0].field.one
    out = _map_laurent(x.num, x.shift, imgs, one)
    # dc is part of the expanded denominator
    return out / _map_laurent(den, zero, imgs, one)


def _eval_poly(poly, shift, values: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for e, c in _iterms(poly):
        term = Fraction(c)
        for v, k in zip(values, e):
            if k:
                term *= v ** k
        total += term
    if any(shift):
        for v, k in zip(values, shift):
            if k:
                if v == 0 and k < 0:
                    raise PoleError("pole at a zero generator")
                term_v = v ** k
                total *= term_v
    return total


def evaluate(x: FieldElem, point: "EvalPoint | Mapping[str, Fraction]") -> Fraction:
    """Specialize the half-generators to rationals.

    ``point`` maps each generator name to the value of its square root.
    Evaluation at a pole raises :class:`PoleError`.
    """
    if isinstance(point, EvalPoint):
        point = point.as_dict()
    values = [Fraction(point[n]) for n in x.field.names]
    den = Fraction(x.dc)
    zero = (0,) * x.field.nvars
    for f, e in x.den_factors():
        den *= _eval_poly(f, zero, values) ** e
    if den == 0:
        raise PoleError("evaluation at a pole")
    return _eval_poly(x.num, x.shift, values) / den


@dataclass(frozen=True)
class EvalPoint:
    """Rational values for the square roots of ``q, t, t0, tn, u0, un``."""

    q: Fraction
    t: Fraction
    t0: Fraction
    tn: Fraction
    u0: Fraction
    un: Fraction

    def as_dict(self) -> dict:
        return {n: getattr(self, n) for n in GENERATORS}

    def values(self) -> tuple:
        return tuple(getattr(self, n) for n in GENERATORS)

    @classmethod
    def random(cls, rng: random.Random, height: int = 40) -> "EvalPoint":
        """A random point with small-height rational coordinates.

        Values avoid 0 and +-1, so no generator degenerates.
        """
        vals = []
        for _ in GENERATORS:
            while True:
                v = Fraction(rng.randint(-height, height), rng.randint(1, height))
                if v not in (0, 1, -1):
                    break
            vals.append(v)
        return cls(*vals)


# ---------------------------------------------------------------------------
# backends


class ExactBackend:
    """Coefficients in the exact field."""

    exact = True

    def __init__(self, field: "Field | None" = None):
        self.field = field = field or DEFAULT_FIELD
        self.zero = field.zero
        self.one = field.one

    def mono(self, exps: Monomial):
        return self.field.monomial(exps)

    def const(self, c):
        return self.field.const(c)

    def poly(self, terms: Mapping[Monomial, int]):
        """Element for an integer combination ``{exps: coeff}`` of monomials."""
        return self.field.from_terms(terms)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def from_field(self, x: FieldElem) -> FieldElem:
        """An exact field element as a backend value."""
        return x

    def __repr__(self):
        return "ExactBackend()"


class EvalBackend:
    """Coefficients in Q, obtained by specializing at an :class:`EvalPoint`."""

    exact = False

    def __init__(self, point: EvalPoint):
        self.point = point
        self._values = point.values()
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self._cache: dict = {}

    def mono(self, exps: Monomial) -> Fraction:
        exps = tuple(exps)
        hit = self._cache.get(exps)
        if hit is None:
            hit = Fraction(1)
            for v, k in zip(self._values, exps):
                if k:
                    hit *= v ** k
            self._cache[exps] = hit
        return hit

    def const(self, c) -> Fraction:
        return Fraction(c)

    def poly(self, terms: Mapping[Monomial, int]) -> Fraction:
        return sum((c * self.mono(e) for e, c in terms.items()), Fraction(0))

    def is_zero(self, x) -> bool:
        return x == 0

    def specialize(self, x: FieldElem) -> Fraction:
        return evaluate(x, self.point)

    from_field = specialize

    def __repr__(self):
        return f"EvalBackend({self.point})"


# ---------------------------------------------------------------------------
# canonical text form


def _format_power(name: str, d: int) -> str:
    """``name^(d/2)`` written as ``t``, ``t^3``, ``t^(-1)`` or ``t^(1/2)``."""
    if d % 2:
        return f"{name}^({d}/2)"
    k = d // 2
    if k == 1:
        return name
    return f"{name}^{k}" if k > 0 else f"{name}^({k})"


def _format_laurent(terms: Mapping[Monomial, int], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    order = sorted(terms, key=lambda e: (sum(e), e), reverse=True)
    pieces = []
    for k, e in enumerate(order):
        c = terms[e]
        factors = [_format_power(names[i], x) for i, x in enumerate(e) if x]
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def _format_poly(poly, names) -> str:
    return _format_laurent(dict(_iterms(poly)), names)


def format_canonical(x: FieldElem) -> str:
    """Deterministic text form, ``<num>`` or ``(<num>)/(<den>)``.

    Each factor is written ``gen^(d/2)`` with ``d`` the doubled exponent;
    terms are ordered by decreasing total degree, then lexicographically.
    """
    names = x.field.names
    num = _format_laurent(x.laurent_terms(), names)
    if x.is_laurent():
        return num
    return f"({num})/({_format_poly(x.den, names)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.field = field
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            pos = m.end()
            if m.group(1) is not None:
                self.tokens.append(("int", int(m.group(1))))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error near token {self.i}: {tok}")
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input at token {self.i}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "("):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            num = self.take("int")[1]
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("int")[1]
            self.take("op", ")")
            return Fraction(sign * num, den)
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        return Fraction(sign * self.take("int")[1])

    def power(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            base = self.field.const(val)
            is_gen = None
        elif kind == "name":
            self.take()
            if val not in self.field.names:
                raise ValueError(f"unknown generator {val!r}")
            base = None
            is_gen = val
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take("op", ")")
            is_gen = None
        else:
            raise ValueError(f"unexpected token {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
        else:
            e = Fraction(1)
        if is_gen is not None:
            d = 2 * e
            if d.denominator != 1:
                raise ValueError(f"exponent {e} of {is_gen} is not a half-integer")
            return self.field.gen(is_gen, int(d))
        if e.denominator != 1:
            raise ValueError("fractional power of a compound expression")
        return base ** int(e)


def parse_canonical(text: str, field: Field = DEFAULT_FIELD) -> FieldElem:
    """Parse the canonical text form; also accepts ``t``, ``t^2``, ``1*t``."""
    return _Parser(text, field).parse()


def to_json(x: FieldElem) -> dict:
    names = x.field.names
    return {
        "num": _format_laurent(x.laurent_terms(), names),
        "den": _format_poly(x.den, names),
    }


def from_json(obj: Mapping[str, str], field: Field = DEFAULT_FIELD) -> FieldElem:
    return parse_canonical(obj["num"], field) / parse_canonical(obj["den"], field)
