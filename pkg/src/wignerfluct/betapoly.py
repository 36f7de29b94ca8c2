"""Sparse polynomials in the even-moment symbols b2, b4, b6, ...

Coefficients are exact rationals. A monomial is the sorted tuple of its
symbol indices with multiplicity, so b4^2 is (4, 4) and the constant
monomial is (). Terms render in graded order: total degree first, then the
index tuple, e.g. '8*b8 + 24*b4^2'.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

Monomial = tuple[int, ...]


class BetaPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(sorted(mono))
            for idx in mono:
                if idx < 2 or idx % 2 != 0:
                    raise ValueError(f"symbol index must be a positive even int: {idx}")
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
        self._terms = {m: c for m, c in clean.items() if c}

    @staticmethod
    def zero() -> "BetaPoly":
        return BetaPoly()

    @staticmethod
    def one() -> "BetaPoly":
        return BetaPoly({(): 1})

    @staticmethod
    def const(value: Fraction | int) -> "BetaPoly":
        return BetaPoly({(): value})

    @staticmethod
    def beta(index: int) -> "BetaPoly":
        """The single symbol b<index> (index even and >= 2).

        >>> str(BetaPoly.beta(4))
        'b4'
        """
        return BetaPoly({(index,): 1})

    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "BetaPoly") -> "BetaPoly":
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return BetaPoly(out)

    def __sub__(self, other: "BetaPoly") -> "BetaPoly":
        return self + (-other)

    def __neg__(self) -> "BetaPoly":
        return BetaPoly({m: -c for m, c in self._terms.items()})

    def __mul__(self, other: "BetaPoly | Fraction | int") -> "BetaPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return BetaPoly(out)

    def __rmul__(self, other: "Fraction | int") -> "BetaPoly":
        return self.scale(other)

    def scale(self, factor: Fraction | int) -> "BetaPoly":
        factor = Fraction(factor)
        return BetaPoly({m: c * factor for m, c in self._terms.items()})

    def evaluate(self, assignment: Mapping[int, float]) -> float:
        """Numerical value under an index -> value assignment.

        Every symbol appearing in the polynomial must be assigned.
        """
        total = 0.0
        for mono, coeff in self._terms.items():
            value = float(coeff)
            for idx in mono:
                if idx not in assignment:
                    raise ValueError(f"no value assigned to symbol b{idx}")
                value *= assignment[idx]
            total += value
        return total

    def gue_specialize(self) -> Fraction:
        """Exact value at b2 = 1 and b4 = b6 = ... = 0."""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            if all(idx == 2 for idx in mono):
                total += coeff
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BetaPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        """Graded rendering, e.g. '8*b8 + 24*b4^2'; the zero polynomial is '0'.

        >>> str(BetaPoly.beta(8) * 8 + BetaPoly.beta(4) * BetaPoly.beta(4) * 24)
        '8*b8 + 24*b4^2'
        """
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=lambda m: (len(m), m)):
            coeff = self._terms[mono]
            body = _render_monomial(mono)
            if body is None:
                chunk = str(abs(coeff))
            elif abs(coeff) == 1:
                chunk = body
            else:
                chunk = f"{abs(coeff)}*{body}"
            if not parts:
                parts.append(chunk if coeff > 0 else f"-{chunk}")
            else:
                parts.append(f"+ {chunk}" if coeff > 0 else f"- {chunk}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<BetaPoly {self}>"


def _render_monomial(mono: Monomial) -> str | None:
    if not mono:
        return None
    factors = []
    for idx in sorted(set(mono)):
        power = mono.count(idx)
        factors.append(f"b{idx}" if power == 1 else f"b{idx}^{power}")
    return "*".join(factors)
