"""Homogeneous polynomials and Laurent vectors in one pair of coordinates (s, t).

HomPoly stores a homogeneous form densely by s-exponent; LaurentVec is the
sparse two-chart workhorse for bundle-valued Cech representatives.  All
coefficients are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .linalg import as_fraction

Point = tuple[Fraction, Fraction]


def rational_point(a) -> Point:
    a0, a1 = a
    pt = (as_fraction(a0), as_fraction(a1))
    if pt == (0, 0):
        raise ValueError("(0, 0) is not a point of the projective line")
    return pt


class HomPoly:
    """Homogeneous polynomial of fixed degree; coeffs[k] multiplies s^k t^(deg-k)."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        cs = tuple(as_fraction(c) for c in coeffs)
        if len(cs) != degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        self.degree = degree
        self.coeffs = cs

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, [0] * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, s_exp: int, coeff=1) -> "HomPoly":
        if not 0 <= s_exp <= degree:
            raise ValueError("monomial exponent out of range")
        coeffs = [Fraction(0)] * (degree + 1)
        coeffs[s_exp] = as_fraction(coeff)
        return cls(degree, coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def monomials(self) -> Iterator[tuple[int, Fraction]]:
        """Yield (s_exp, coeff) over nonzero terms."""
        for k, c in enumerate(self.coeffs):
            if c:
                yield k, c

    def add(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return HomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, factor) -> "HomPoly":
        f = as_fraction(factor)
        return HomPoly(self.degree, [f * c for c in self.coeffs])

    def multiply(self, other: "HomPoly") -> "HomPoly":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return HomPoly(self.degree + other.degree, out)

    def evaluate(self, point) -> Fraction:
        a0, a1 = rational_point(point)
        total = Fraction(0)
        for k, c in self.monomials():
            total += c * a0 ** k * a1 ** (self.degree - k)
        return total

    def divide_by_linear(self, delta: "HomPoly") -> Optional["HomPoly"]:
        """Exact quotient by a nonzero linear form, or None when not divisible."""
        if delta.degree != 1:
            raise ValueError("divisor must be linear")
        u, v = delta.coeffs[1], delta.coeffs[0]  # delta = u*s + v*t
        if u == 0 and v == 0:
            raise ValueError("divisor must be nonzero")
        if self.degree == 0:
            raise ValueError("cannot divide a degree-0 form by a linear form")
        d = self.degree
        q = [Fraction(0)] * d
        if v != 0:
            # coefficient of s^k t^(d-k) in q*delta: u*q[k-1] + v*q[k]
            for k in range(d):
                prev = q[k - 1] if k else Fraction(0)
                q[k] = (self.coeffs[k] - u * prev) / v
            if self.coeffs[d] != u * q[d - 1]:
                return None
        else:
            for k in range(d, 0, -1):
                q[k - 1] = self.coeffs[k] / u
            if self.coeffs[0] != 0:
                return None
        return HomPoly(d - 1, q)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomPoly) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c}*s^{k}t^{self.degree - k}" for k, c in self.monomials()]
        return " + ".join(terms) if terms else f"0[deg {self.degree}]"


def normalized_point(a) -> Point:
    """Canonical representative: (a0/a1, 1), or (1, 0) for the point at infinity."""
    a0, a1 = rational_point(a)
    if a1 != 0:
        return (a0 / a1, Fraction(1))
    return (Fraction(1), Fraction(0))


def linear_form_vanishing_at(point) -> HomPoly:
    """The linear form a1*s - a0*t, zero exactly at the given point."""
    a0, a1 = rational_point(point)
    return HomPoly(1, [-a0, a1])


class LaurentVec:
    """Sparse bundle-valued Laurent vector keyed by (component, s_exp, t_exp)."""

    __slots__ = ("ncomp", "entries")

    def __init__(self, ncomp: int, entries: Optional[dict] = None):
        self.ncomp = ncomp
        cleaned = {}
        if entries:
            for key, value in entries.items():
                val = as_fraction(value)
                if val:
                    comp = key[0]
                    if not 0 <= comp < ncomp:
                        raise ValueError("component index out of range")
                    cleaned[key] = val
        self.entries = cleaned

    @classmethod
    def zero(cls, ncomp: int) -> "LaurentVec":
        return cls(ncomp, {})

    def is_zero(self) -> bool:
        return not self.entries

    def add(self, other: "LaurentVec") -> "LaurentVec":
        if self.ncomp != other.ncomp:
            raise ValueError("component count mismatch")
        out = dict(self.entries)
        for key, val in other.entries.items():
            out[key] = out.get(key, Fraction(0)) + val
        return LaurentVec(self.ncomp, out)

    def sub(self, other: "LaurentVec") -> "LaurentVec":
        return self.add(other.scale(-1))

    def scale(self, factor) -> "LaurentVec":
        f = as_fraction(factor)
        if not f:
            return LaurentVec.zero(self.ncomp)
        return LaurentVec(self.ncomp, {k: f * v for k, v in self.entries.items()})

    def times_monomial(self, s_exp: int, t_exp: int, coeff=1) -> "LaurentVec":
        f = as_fraction(coeff)
        return LaurentVec(self.ncomp, {
            (c, i + s_exp, j + t_exp): f * v for (c, i, j), v in self.entries.items()})

    def times_form(self, form: HomPoly) -> "LaurentVec":
        out = LaurentVec.zero(self.ncomp)
        for k, c in form.monomials():
            out = out.add(self.times_monomial(k, form.degree - k, c))
        return out

    def evaluate(self, point) -> list[Fraction]:
        """Componentwise value at a point whose relevant coordinate is nonzero."""
        a0, a1 = rational_point(point)
        values = [Fraction(0)] * self.ncomp
        for (comp, i, j), coeff in self.entries.items():
            values[comp] += coeff * a0 ** i * a1 ** j
        return values

    def min_exponents(self) -> tuple[int, int]:
        lo_s = min((i for (_, i, _) in self.entries), default=0)
        lo_t = min((j for (_, _, j) in self.entries), default=0)
        return lo_s, lo_t

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentVec) and self.ncomp == other.ncomp
                and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"LaurentVec(ncomp={self.ncomp}, nnz={len(self.entries)})"
