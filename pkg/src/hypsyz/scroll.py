"""Intersection theory on the ruled surface and graded Betti tables.

The curve sits on a two-dimensional rational normal scroll of degree
f = d - g - 1 inside P^(d-g).  Its structure sheaf is resolved by the mapping
cone of two standard complexes attached to a generic map from an f-dimensional
space to a 2-dimensional one; graded Betti numbers are read off the term
twists alone and audited against the Hilbert series of the coordinate ring.
Differentials are never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import CurveParams, comb0


@dataclass(frozen=True)
class ScrollData:
    """Scroll of type (e1, e2) with e1 >= e2, degree f, inside P^(f+1)."""

    f: int
    e1: int
    e2: int

    @property
    def ambient_dim(self) -> int:
        return self.f + 1

    @property
    def dim_f_space(self) -> int:
        return self.f

    @property
    def dim_g_space(self) -> int:
        return 2


def scroll_data(params: CurveParams) -> ScrollData:
    n, x = params.n, params.x
    return ScrollData(n, max(x, n - x), min(x, n - x))


@dataclass(frozen=True)
class DivClass:
    """Divisor class a*H + b*R on the scroll; H^2 = f, H.R = 1, R^2 = 0."""

    a: int
    b: int


def intersect(c1: DivClass, c2: DivClass, f: int) -> int:
    return c1.a * c2.a * f + c1.a * c2.b + c2.a * c1.b


def curve_class(params: CurveParams) -> DivClass:
    """Class of the curve on its scroll: 2H - (d-2g-2)R."""
    return DivClass(2, -(params.d - 2 * params.g - 2))


def canonical_class(f: int) -> DivClass:
    return DivClass(-2, f - 2)


def adjunction_genus(cls: DivClass, f: int) -> int:
    """(C^2 + C.K)/2 + 1 for a curve class on the scroll."""
    total = intersect(cls, cls, f) + intersect(cls, canonical_class(f), f)
    if total % 2:
        raise ValueError("adjunction total is odd; not a curve class")
    return total // 2 + 1


@dataclass(frozen=True)
class ComplexTerm:
    """One term of the resolution: multiplicity copies of O(twist) at step j."""

    j: int
    twist: int
    mult: int


def scroll_resolution_terms(b: int, f: int) -> list[ComplexTerm]:
    """Terms of the standard length-f complex resolving the b-th symmetric
    power data on a degree-f scroll (dim G = 2), for b >= -1.

    Step j carries wedge^j F (x) Sym_(b-j) G in twist -j for j <= b, and
    wedge^(j+1) F (x) D_(j-b-1) G* (x) det G* in twist -(j+1) for j >= b+1.
    Terms with vanishing multiplicity are dropped.
    """
    if b < -1:
        raise ValueError("b must be >= -1")
    if f < 2:
        raise ValueError("f must be >= 2")
    terms = []
    for j in range(0, max(b, f - 1) + 1):
        if j <= b:
            mult = comb0(f, j) * (b - j + 1)
            twist = -j
        else:
            mult = comb0(f, j + 1) * (j - b)
            twist = -(j + 1)
        if mult:
            terms.append(ComplexTerm(j, twist, mult))
    return terms


class BettiTable:
    """Graded Betti numbers beta_{p,j} of the coordinate ring of the curve."""

    def __init__(self, params: CurveParams, entries: dict[tuple[int, int], int]):
        self.params = params
        self.entries = {k: v for k, v in sorted(entries.items()) if v}
        if self.entries.get((0, 0)) != 1 or any(
                p == 0 and key != (0, 0) for (p, key) in
                ((pp, (pp, jj)) for (pp, jj) in self.entries)):
            raise ValueError("table must have beta_{0,0} = 1 and no other p = 0 entry")
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("negative multiplicity")

    def entry(self, p: int, j: int) -> int:
        return self.entries.get((p, j), 0)

    @property
    def max_p(self) -> int:
        return max(p for p, _ in self.entries)

    @property
    def max_q(self) -> int:
        return max(j - p for p, j in self.entries)

    def column_total(self, p: int) -> int:
        return sum(v for (pp, _), v in self.entries.items() if pp == p)

    def alternating_total(self) -> int:
        return sum((-1) ** p * v for (p, _), v in self.entries.items())

    def items(self) -> list[tuple[int, int, int]]:
        return [(p, j, v) for (p, j), v in self.entries.items()]

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"BettiTable({self.params}, {self.entries})"


def betti_table(params: CurveParams) -> BettiTable:
    """Betti table from the mapping cone: position p collects the p-th term of
    the plain complex and the (p-1)-st term of the twisted one."""
    f = params.n
    b = params.d - 2 * params.g - 2
    entries: dict[tuple[int, int], int] = {}
    for term in scroll_resolution_terms(0, f):
        key = (term.j, -term.twist)
        entries[key] = entries.get(key, 0) + term.mult
    for term in scroll_resolution_terms(b, f):
        key = (term.j + 1, -(term.twist - 2))
        entries[key] = entries.get(key, 0) + term.mult
    return BettiTable(params, entries)


def coordinate_ring_dim(params: CurveParams, n: int) -> int:
    if n < 0:
        return 0
    if n == 0:
        return 1
    return n * params.d + 1 - params.g


def hilbert_first_failure(params: CurveParams, table: BettiTable):
    """First degree where the alternating Betti sum misses the Hilbert value."""
    r = params.d - params.g  # ambient projective dimension
    for n in range(0, params.d + 1):
        lhs = sum((-1) ** p * v * comb0(n - j + r, r)
                  for (p, j), v in table.entries.items())
        if lhs != coordinate_ring_dim(params, n):
            return n
    return None


def hilbert_check(params: CurveParams, table: BettiTable) -> bool:
    return hilbert_first_failure(params, table) is None


def h1_bridge_failures(params: CurveParams, table: BettiTable | None = None) -> list[int]:
    """Indices i in 0..g where beta_{d-g-i-1, d-g-i+1} misses the h1 formula."""
    if table is None:
        table = betti_table(params)
    g, d = params.g, params.d
    bad = []
    for i in range(0, g + 1):
        expected = comb0(d - g - 1, i) * (g - i)
        if table.entry(d - g - i - 1, d - g - i + 1) != expected:
            bad.append(i)
    return bad


def h1_bridge_check(params: CurveParams, table: BettiTable | None = None) -> bool:
    return not h1_bridge_failures(params, table)
