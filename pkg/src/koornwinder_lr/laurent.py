"""
Sparse Laurent polynomials in ``x_1 .. x_n``.

Coefficients are either exact :class:`~koornwinder_lr.coeff_field.FieldElem`
values or rationals (evaluation backend); the container only needs ``+``,
``*`` and truthiness from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .coeff_field import FieldElem, FieldSum, to_json, format_canonical

__all__ = ["LaurentPoly"]


@dataclass
class LaurentPoly:
    """``sum terms[wt] * x^wt``; zero coefficients are never stored."""

    n: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def monomial(cls, wt, coeff) -> "LaurentPoly":
        wt = tuple(wt)
        return cls(len(wt), {wt: coeff} if coeff else {})

    @classmethod
    def constant(cls, n: int, coeff) -> "LaurentPoly":
        return cls(n, {(0,) * n: coeff} if coeff else {})

    @classmethod
    def from_sum(cls, n: int, pairs: Iterable) -> "LaurentPoly":
        """``sum c x^wt`` over ``(wt, c)`` pairs.

        Exact coefficients are summed with one :class:`FieldSum` per weight,
        which is much cheaper than repeated ``+`` for long sums.
        """
        sums: dict = {}
        plain = cls(n)
        for wt, c in pairs:
            if isinstance(c, FieldElem):
                acc = sums.get(wt)
                if acc is None:
                    acc = sums[wt] = FieldSum(c.field)
                acc.add(c)
            else:
                plain.add_term(wt, c)
        for wt, acc in sums.items():
            plain.add_term(wt, acc.value())
        return plain

    def copy(self) -> "LaurentPoly":
        return LaurentPoly(self.n, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, wt, default=None):
        return self.terms.get(tuple(wt), default)

    def support(self) -> list:
        return sorted(self.terms)

    def add_term(self, wt, c) -> None:
        """In-place ``self += c x^wt``."""
        if not c:
            return
        old = self.terms.get(wt)
        if old is None:
            self.terms[wt] = c
        else:
            new = old + c
            if new:
                self.terms[wt] = new
            else:
                del self.terms[wt]

    def iadd(self, other: "LaurentPoly", scale=None) -> "LaurentPoly":
        """In-place ``self += scale * other``."""
        if scale is None:
            for wt, c in other.terms.items():
                self.add_term(wt, c)
        elif scale:
            for wt, c in other.terms.items():
                self.add_term(wt, c * scale)
        return self

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self.copy().iadd(other)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = self.copy()
        for wt, c in other.terms.items():
            out.add_term(wt, -c)
        return out

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, {wt: -c for wt, c in self.terms.items()})

    def scale(self, s) -> "LaurentPoly":
        if not s:
            return LaurentPoly(self.n)
        return LaurentPoly(self.n, {wt: c * s for wt, c in self.terms.items()})

    def shift(self, wt) -> "LaurentPoly":
        """Multiply by the monomial ``x^wt``."""
        return LaurentPoly(
            self.n,
            {tuple(a + b for a, b in zip(k, wt)): c for k, c in self.terms.items()},
        )

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = LaurentPoly(self.n)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out.add_term(tuple(a + b for a, b in zip(w1, w2)), c1 * c2)
        return out

    def map_coeffs(self, fn: Callable) -> "LaurentPoly":
        out = LaurentPoly(self.n)
        for wt, c in self.terms.items():
            out.add_term(wt, fn(c))
        return out

    def map_weights(self, fn: Callable) -> "LaurentPoly":
        out = LaurentPoly(self.n)
        for wt, c in self.terms.items():
            out.add_term(tuple(fn(wt)), c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"LaurentPoly({self.n}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        out = []
        for wt in sorted(self.terms):
            c = self.terms[wt]
            out.append({"wt": list(wt), "coeff": _coeff_json(c)})
        return {"terms": out}

    def pretty(self) -> str:
        """Sum of terms in decreasing weight order, e.g. ``tn^(1/2)*x1 + 1``."""
        if not self.terms:
            return "0"
        parts = []
        for wt in sorted(self.terms, reverse=True):
            c = _coeff_text(self.terms[wt])
            m = _monomial_text(wt)
            if not m:
                parts.append(c)
            elif c == "1":
                parts.append(m)
            elif c == "-1":
                parts.append("-" + m)
            else:
                parts.append(f"({c})*{m}" if " " in c or c.startswith("(") else f"{c}*{m}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


def _monomial_text(wt) -> str:
    out = []
    for i, e in enumerate(wt, start=1):
        if e == 1:
            out.append(f"x{i}")
        elif e:
            out.append(f"x{i}^{e}" if e > 0 else f"x{i}^({e})")
    return "*".join(out)


def _coeff_json(c):
    if isinstance(c, FieldElem):
        return to_json(c)
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _coeff_text(c) -> str:
    if isinstance(c, FieldElem):
        return format_canonical(c)
    return str(c)
