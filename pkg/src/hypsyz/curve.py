"""The curve model (g, d, x): a degree-d line bundle on a genus-g hyperelliptic
curve is handled entirely through its pushforward to P1, the rank-2 split
bundle W = O(x) + O(d-g-1-x).  No curve equation is ever constructed; every
quantity of interest factors through the splitting integer x.

Twisting by the degree-2 pencil on the curve corresponds to twisting W, and
the structure sheaf pushes forward to O + O(-g-1).  The wedge powers of the
dual evaluation kernel on the curve are modelled by cokernel presentations on
P1 whose presentation matrix wedges the 2x2 minor vector of the section
evaluation matrix of W against constant wedge basis elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .bundles import BundleMap, SplitBundle, coh, shuffle_sign
from .cech import CokernelPresentation
from .polynomials import HomPoly, rational_point


def comb0(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


class InvalidParameters(ValueError):
    """Model parameters outside the admissible range; message names the bound."""


@dataclass(frozen=True, order=True)
class CurveParams:
    """Validated triple (g, d, x); construct through validate()."""

    g: int
    d: int
    x: int

    @property
    def n(self) -> int:
        """Degree of the pushforward bundle W, d - g - 1."""
        return self.d - self.g - 1

    @property
    def r(self) -> int:
        """Rank of the dual evaluation kernel, d - g."""
        return self.d - self.g

    @property
    def u_dim(self) -> int:
        """h0 of W(-1), also d - g - 1."""
        return self.d - self.g - 1

    def w_bundle(self) -> SplitBundle:
        return SplitBundle([self.x, self.n - self.x])

    def __repr__(self) -> str:
        return f"CurveParams(g={self.g}, d={self.d}, x={self.x})"


def x_bounds(g: int, d: int) -> tuple[int, int]:
    """Admissible window for the splitting integer at the given (g, d)."""
    lower = max(1, -((-(d - 2 * g - 2)) // 2))  # ceil((d-2g-2)/2), at least 1
    upper = (d - g - 1) // 2
    return lower, upper


def validate(g: int, d: int, x: int) -> CurveParams:
    if g < 2:
        raise InvalidParameters(f"g={g} violates g >= 2")
    if d < 2 * g + 1:
        raise InvalidParameters(f"d={d} violates d >= 2g+1 = {2 * g + 1}")
    lower, upper = x_bounds(g, d)
    if x < lower:
        raise InvalidParameters(
            f"x={x} below lower bound max(1, ceil((d-2g-2)/2)) = {lower}")
    if x > upper:
        raise InvalidParameters(
            f"x={x} above upper bound floor((d-g-1)/2) = {upper}")
    return CurveParams(g, d, x)


def valid_x_values(g: int, d: int) -> list[int]:
    lower, upper = x_bounds(g, d)
    return list(range(lower, upper + 1))


def pushforward_coh(params: CurveParams, e: int, k: int) -> tuple[int, int]:
    """(h0, h1) of L^e (x) T^k on the curve, computed on P1 after pushforward."""
    if e == 1:
        bundle = params.w_bundle().twist(k)
    elif e == 0:
        bundle = SplitBundle([k, k - params.g - 1])
    else:
        raise ValueError("e must be 0 or 1")
    data = coh(bundle)
    return data.h0, data.h1


def recover_x(params: CurveParams) -> int:
    """Least k >= 0 with nonvanishing h1 of W(-2-k); recovers the splitting."""
    w = params.w_bundle()
    k = 0
    while True:
        if w.twist(-2 - k).h1() > 0:
            return k
        k += 1


# -- section basis of W and its minor vector --------------------------------


def w_section_basis(params: CurveParams) -> list[tuple[int, int]]:
    """Ordered basis of H0(W) as (component, s-degree) pairs."""
    n, x = params.n, params.x
    return [(0, k) for k in range(x + 1)] + [(1, k) for k in range(n - x + 1)]


def w_section_count(params: CurveParams) -> int:
    return params.d - params.g + 1


def minor_s_degree(params: CurveParams, c1: int, c2: int) -> int | None:
    """s-degree of the 2x2 minor of the evaluation matrix at columns c1 < c2.

    None when both columns feed the same summand (the minor vanishes).
    """
    basis = w_section_basis(params)
    (b1, k1), (b2, k2) = basis[c1], basis[c2]
    if b1 == b2:
        return None
    return k1 + k2


def minor_poly(params: CurveParams, c1: int, c2: int) -> HomPoly | None:
    sdeg = minor_s_degree(params, c1, c2)
    if sdeg is None:
        return None
    return HomPoly.monomial(params.n, sdeg)


def minor_vector_at(params: CurveParams, point) -> dict[tuple[int, int], Fraction]:
    """Values of all minors at a rational point, keyed by the column pair."""
    a0, a1 = rational_point(point)
    n = params.n
    out = {}
    m = w_section_count(params)
    for c1 in range(m):
        for c2 in range(c1 + 1, m):
            sdeg = minor_s_degree(params, c1, c2)
            if sdeg is None:
                continue
            out[(c1, c2)] = a0 ** sdeg * a1 ** (n - sdeg)
    return out


# -- the P1 models of the wedge powers ---------------------------------------


@lru_cache(maxsize=None)
def wedge_model(params: CurveParams, i: int) -> CokernelPresentation:
    """Cokernel presentation on P1 whose sections model Gamma of the i-th
    wedge power of the dual evaluation kernel.

    The target is the trivial bundle on the i-th wedge of the dual section
    basis of W; the presentation map wedges the minor vector against every
    (i-2)-wedge basis element.  For i in {0, 1} the map degenerates to zero
    and the model is the trivial bundle itself.
    """
    m = w_section_count(params)
    if not 0 <= i <= params.r:
        raise ValueError(f"i={i} outside 0..{params.r}")
    target_sets = list(_wedge_sets(m, i))
    target = SplitBundle([0] * len(target_sets))
    if i < 2:
        return CokernelPresentation(BundleMap.zero(SplitBundle([]), target))
    target_index = {sub: idx for idx, sub in enumerate(target_sets)}
    source_sets = list(_wedge_sets(m, i - 2))
    source = SplitBundle([-params.n] * len(source_sets))
    entries = {}
    for j, J in enumerate(source_sets):
        complement = [c for c in range(m) if c not in J]
        for a in range(len(complement)):
            for b in range(a + 1, len(complement)):
                c1, c2 = complement[a], complement[b]
                poly = minor_poly(params, c1, c2)
                if poly is None:
                    continue
                M = tuple(sorted(J + (c1, c2)))
                sign = shuffle_sign((c1, c2), J)
                entries[(target_index[M], j)] = poly if sign == 1 else poly.scale(-1)
    return CokernelPresentation(BundleMap(source, target, entries))


def _wedge_sets(m: int, k: int):
    from itertools import combinations
    return combinations(range(m), k)


def wedge_basis_sets(params: CurveParams, i: int) -> list[tuple[int, ...]]:
    return list(_wedge_sets(w_section_count(params), i))


# -- dimension formulas -------------------------------------------------------


def wedge_model_dim(params: CurveParams, i: int) -> int:
    """Closed-form dimension of the model section space, valid for i <= d-g."""
    g, d = params.g, params.d
    if not 0 <= i <= d - g:
        raise ValueError(f"i={i} outside 0..{d - g}")
    return comb0(d - g + 1, i) + comb0(d - g - 1, i - 2) * (d - i - g)


@dataclass(frozen=True)
class WedgeSectionsDim:
    value: int
    in_range: bool  # closed form established only for i <= g


def wedge_sections_dim(params: CurveParams, i: int) -> WedgeSectionsDim:
    """Dimension of the curve-side wedge section space.

    For i <= g this is the closed form (equal to wedge_model_dim); beyond
    that range only the Euler characteristic is asserted, flagged in_range
    False, because the intermediate identities h0(T^i) = i+1 and
    h1(T^i) = g-i fail for i > g.
    """
    g, d = params.g, params.d
    if not 0 <= i <= d - g:
        raise ValueError(f"i={i} outside 0..{d - g}")
    if i <= g:
        return WedgeSectionsDim(wedge_model_dim(params, i), True)
    n = params.n
    chi = comb0(n, i - 1) * (g - d + 2 * i + 1) + comb0(n, i) * (2 * i + 1 - g)
    return WedgeSectionsDim(chi, False)


def wedge_h1(params: CurveParams, i: int) -> int:
    """h1 of the i-th wedge power on the curve; zero beyond i = g."""
    g, d = params.g, params.d
    if not 0 <= i <= d - g:
        raise ValueError(f"i={i} outside 0..{d - g}")
    if i > g:
        return 0
    return comb0(d - g - 1, i) * (g - i)


@dataclass(frozen=True)
class DimensionReport:
    """Side-by-side of the P1 model dimension and the curve-side value."""

    params: CurveParams
    i: int
    model_dim: int
    sections_dim: int
    in_range: bool
    agree: bool


def dimension_report(params: CurveParams, i: int) -> DimensionReport:
    model = wedge_model_dim(params, i)
    sections = wedge_sections_dim(params, i)
    return DimensionReport(params, i, model, sections.value, sections.in_range,
                           model == sections.value)
