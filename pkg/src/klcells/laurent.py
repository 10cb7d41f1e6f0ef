"""Exact Laurent polynomials in one variable v with integer coefficients.

These carry all canonical-basis coefficients, structure constants and graded
dimensions in the rest of the package, so everything here is exact integer
arithmetic (Python bignums, no floats, no modular shortcuts).

A polynomial is stored densely as the exponent ``lo`` of its lowest term
plus the coefficient list ``coeffs``, where ``coeffs[i]`` is the coefficient
of ``v**(lo + i)``.  The zero polynomial is the empty coefficient list.

>>> p = LaurentPoly(-1, [1, 0, 1])   # v^-1 + v
>>> p.bar() == p
True
>>> print(p * p)
v^-2 + 2 + v^2
"""

from __future__ import annotations

from typing import Iterable, Sequence


class LaurentPoly:
    """Immutable integer Laurent polynomial in ``v``."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs: Iterable[int]):
        cs = list(coeffs)
        # normalise: strip zeros at both ends, pin the zero polynomial to lo=0
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        if start == end:
            object.__setattr__(self, "lo", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "lo", lo + start)
            object.__setattr__(self, "coeffs", tuple(cs[start:end]))

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> LaurentPoly:
        return _ZERO

    @staticmethod
    def one() -> LaurentPoly:
        return _ONE

    @staticmethod
    def monomial(exponent: int, coeff: int = 1) -> LaurentPoly:
        return LaurentPoly(exponent, [coeff])

    @staticmethod
    def from_int(c: int) -> LaurentPoly:
        return LaurentPoly(0, [c])

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Largest exponent with nonzero coefficient; raises on zero."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.lo + len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        """Smallest exponent with nonzero coefficient; raises on zero."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return self.lo

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    @property
    def constant_term(self) -> int:
        return self.coefficient(0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def in_v_ztimes_v(self) -> bool:
        """True iff the polynomial lies in v*Z[v]."""
        return self.is_zero() or self.lo >= 1

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        cs = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            cs[self.lo - lo + i] += c
        for i, c in enumerate(other.coeffs):
            cs[other.lo - lo + i] += c
        return LaurentPoly(lo, cs)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if not self.coeffs or not other.coeffs:
            return _ZERO
        cs = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    cs[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, cs)

    def scale(self, c: int) -> LaurentPoly:
        if c == 0:
            return _ZERO
        return LaurentPoly(self.lo, [c * a for a in self.coeffs])

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by v**k."""
        if not self.coeffs:
            return _ZERO
        return LaurentPoly(self.lo + k, self.coeffs)

    def bar(self) -> LaurentPoly:
        """The involution v -> v^-1 (exponent negation)."""
        if not self.coeffs:
            return _ZERO
        return LaurentPoly(-(self.lo + len(self.coeffs) - 1), self.coeffs[::-1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.lo, self.coeffs))

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {"lo": self.lo, "coeffs": list(self.coeffs)}

    @staticmethod
    def from_json(data: dict) -> LaurentPoly:
        return LaurentPoly(int(data["lo"]), [int(c) for c in data["coeffs"]])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.lo + i
            if e == 0:
                parts.append(f"{c}")
            else:
                ve = "v" if e == 1 else f"v^{e}"
                if c == 1:
                    parts.append(ve)
                elif c == -1:
                    parts.append(f"-{ve}")
                else:
                    parts.append(f"{c}*{ve}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self.lo}, {list(self.coeffs)})"


_ZERO = LaurentPoly(0, [])
_ONE = LaurentPoly(0, [1])

#: the generator v and its inverse, for convenience
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)


def laurent_sum(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    total = _ZERO
    for p in polys:
        total = total + p
    return total
