"""Split vector bundles on the projective line and their cohomology.

Every bundle is a finite direct sum of line bundles O(a) recorded by its
degree tuple (summand order is basis order).  Cohomology comes with explicit
monomial bases: H0 of O(a) is spanned by s^k t^(a-k), H1 by the Laurent
monomials with both exponents <= -1.  Maps between bundles are matrices of
homogeneous forms and act on those bases by monomial calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Optional

from .linalg import Mat
from .polynomials import HomPoly, LaurentVec


class SplitBundle:
    """Direct sum of line bundles O(a_i) on P1, one integer degree per summand."""

    __slots__ = ("degrees",)

    def __init__(self, degrees: Iterable[int]):
        self.degrees = tuple(int(a) for a in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def dual(self) -> "SplitBundle":
        return SplitBundle(-a for a in self.degrees)

    def twist(self, k: int) -> "SplitBundle":
        return SplitBundle(a + k for a in self.degrees)

    def direct_sum(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(self.degrees + other.degrees)

    def tensor(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(a + b for a in self.degrees for b in other.degrees)

    def wedge(self, k: int) -> "SplitBundle":
        # k > rank gives the rank-0 bundle.
        return SplitBundle(sum(sel) for sel in combinations(self.degrees, k))

    def sym(self, k: int) -> "SplitBundle":
        return SplitBundle(sum(sel) for sel in combinations_with_replacement(self.degrees, k))

    def wedge_basis(self, k: int) -> list[tuple[int, ...]]:
        """Index subsets of the summands, in the lex order used by wedge()."""
        return list(combinations(range(self.rank), k))

    def h0(self) -> int:
        return sum(max(a + 1, 0) for a in self.degrees)

    def h1(self) -> int:
        return sum(max(-a - 1, 0) for a in self.degrees)

    def __eq__(self, other) -> bool:
        return isinstance(other, SplitBundle) and self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self) -> str:
        return f"SplitBundle{self.degrees}"


def shuffle_sign(left: tuple[int, ...], right: tuple[int, ...]) -> int:
    """Sign of sorting the concatenation of two disjoint increasing index tuples."""
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class CohSpace:
    """Labelled monomial basis of H0 or H1 of a split bundle.

    Labels are (component, s_exp, t_exp) with s_exp + t_exp equal to the
    component degree.  H0 labels have both exponents >= 0; H1 labels have
    both <= -1.
    """

    bundle: SplitBundle
    which: int  # 0 or 1
    basis: tuple[tuple[int, int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self) -> dict[tuple[int, int, int], int]:
        return {label: i for i, label in enumerate(self.basis)}


def h0_space(bundle: SplitBundle) -> CohSpace:
    labels = []
    for comp, a in enumerate(bundle.degrees):
        for k in range(a + 1):
            labels.append((comp, k, a - k))
    return CohSpace(bundle, 0, tuple(labels))


def h1_space(bundle: SplitBundle) -> CohSpace:
    labels = []
    for comp, a in enumerate(bundle.degrees):
        for i in range(a + 1, 0):
            labels.append((comp, i, a - i))
    return CohSpace(bundle, 1, tuple(labels))


@dataclass(frozen=True)
class CohData:
    h0: int
    h1: int
    h0_space: CohSpace
    h1_space: CohSpace


def coh(bundle: SplitBundle) -> CohData:
    """Dimensions and monomial bases of H0 and H1; chi = deg + rank."""
    space0 = h0_space(bundle)
    space1 = h1_space(bundle)
    return CohData(space0.dim, space1.dim, space0, space1)


class BundleMap:
    """Matrix of homogeneous forms; entry (i, j) has degree target_i - source_j."""

    __slots__ = ("source", "target", "entries")

    def __init__(self, source: SplitBundle, target: SplitBundle,
                 entries: dict[tuple[int, int], HomPoly]):
        cleaned = {}
        for (ti, si), poly in entries.items():
            if not 0 <= ti < target.rank or not 0 <= si < source.rank:
                raise ValueError("entry index out of range")
            if poly.is_zero():
                continue
            expected = target.degrees[ti] - source.degrees[si]
            if poly.degree != expected:
                raise ValueError(
                    f"entry ({ti},{si}) has degree {poly.degree}, needs {expected}")
            cleaned[(ti, si)] = poly
        self.source = source
        self.target = target
        self.entries = cleaned

    @classmethod
    def zero(cls, source: SplitBundle, target: SplitBundle) -> "BundleMap":
        return cls(source, target, {})

    def entry(self, ti: int, si: int) -> Optional[HomPoly]:
        return self.entries.get((ti, si))

    def compose(self, inner: "BundleMap") -> "BundleMap":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("composition shape mismatch")
        acc: dict[tuple[int, int], HomPoly] = {}
        for (ti, mi), left in self.entries.items():
            for (mi2, si), right in inner.entries.items():
                if mi2 != mi:
                    continue
                prod = left.multiply(right)
                key = (ti, si)
                acc[key] = acc[key].add(prod) if key in acc else prod
        return BundleMap(inner.source, self.target, acc)

    def at_point(self, point) -> Mat:
        rows = [[Fraction(0)] * self.source.rank for _ in range(self.target.rank)]
        for (ti, si), poly in self.entries.items():
            rows[ti][si] = poly.evaluate(point)
        return Mat(rows, ncols=self.source.rank)

    def apply_laurent(self, vec: LaurentVec) -> LaurentVec:
        if vec.ncomp != self.source.rank:
            raise ValueError("component count mismatch")
        out = LaurentVec.zero(self.target.rank)
        for (ti, si), poly in self.entries.items():
            for (comp, i, j), coeff in vec.entries.items():
                if comp != si:
                    continue
                for k, c in poly.monomials():
                    out = out.add(LaurentVec(self.target.rank,
                                             {(ti, i + k, j + poly.degree - k): coeff * c}))
        return out

    def twist(self, k: int) -> "BundleMap":
        return BundleMap(self.source.twist(k), self.target.twist(k), dict(self.entries))

    def __eq__(self, other) -> bool:
        return (isinstance(other, BundleMap) and self.source == other.source
                and self.target == other.target and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"BundleMap({self.source} -> {self.target}, {len(self.entries)} entries)"


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> A -> B -> Q -> 0 of split bundles with polynomial maps."""

    sub: BundleMap    # A -> B
    quot: BundleMap   # B -> Q

    @property
    def A(self) -> SplitBundle:
        return self.sub.source

    @property
    def B(self) -> SplitBundle:
        return self.sub.target

    @property
    def Q(self) -> SplitBundle:
        return self.quot.target

    def validate(self, points=((1, 0), (0, 1), (1, 1), (2, 3))) -> None:
        if self.quot.source != self.B:
            raise ValueError("middle bundles disagree")
        if self.A.rank + self.Q.rank != self.B.rank:
            raise ValueError("rank additivity fails")
        composite = self.quot.compose(self.sub)
        if composite.entries:
            raise ValueError("quot o sub is not zero")
        from .linalg import rank_kernel
        for pt in points:
            r_sub, _ = rank_kernel(self.sub.at_point(pt))
            r_quot, _ = rank_kernel(self.quot.at_point(pt))
            if r_sub != self.A.rank or r_quot != self.Q.rank:
                raise ValueError(f"sequence not exact at sample point {pt}")


def evaluation_sequence(bundle: SplitBundle) -> ShortExactSequence:
    """0 -> H0(F(-1)) (x) O(-1) -> H0(F) (x) O -> F -> 0 for globally generated F."""
    if any(a < 0 for a in bundle.degrees):
        raise ValueError("evaluation sequence needs all summand degrees >= 0")
    sections = h0_space(bundle).basis
    middle = SplitBundle([0] * len(sections))
    quot_entries = {}
    for col, (comp, i, j) in enumerate(sections):
        quot_entries[(comp, col)] = HomPoly.monomial(bundle.degrees[comp], i)
    quot = BundleMap(middle, bundle, quot_entries)

    # One relation s*sec_k - t*sec_{k+1} per consecutive pair inside a summand.
    relations = []
    index = {label: i for i, label in enumerate(sections)}
    for comp, a in enumerate(bundle.degrees):
        for k in range(a):
            relations.append((index[(comp, k, a - k)], index[(comp, k + 1, a - k - 1)]))
    kernel = SplitBundle([-1] * len(relations))
    sub_entries = {}
    s_form = HomPoly(1, [0, 1])
    t_form = HomPoly(1, [1, 0])
    for col, (low, high) in enumerate(relations):
        sub_entries[(low, col)] = s_form
        sub_entries[(high, col)] = t_form.scale(-1)
    sub = BundleMap(kernel, middle, sub_entries)
    ses = ShortExactSequence(sub, quot)
    ses.validate()
    return ses


def _induced_matrix(space_src: CohSpace, space_tgt: CohSpace, bmap: BundleMap,
                    keep) -> Mat:
    tgt_index = space_tgt.index()
    rows = [[Fraction(0)] * space_src.dim for _ in range(space_tgt.dim)]
    for col, (comp, i, j) in enumerate(space_src.basis):
        for (ti, si), poly in bmap.entries.items():
            if si != comp:
                continue
            for k, c in poly.monomials():
                label = (ti, i + k, j + poly.degree - k)
                if keep(label):
                    rows[tgt_index[label]][col] += c
    return Mat(rows, ncols=space_src.dim)


def induced_h0(bmap: BundleMap) -> Mat:
    """Matrix of the map on global sections in the monomial bases."""
    src = h0_space(bmap.source)
    tgt = h0_space(bmap.target)
    return _induced_matrix(src, tgt, bmap, lambda lab: lab[1] >= 0 and lab[2] >= 0)


def induced_h1(bmap: BundleMap) -> Mat:
    """Matrix on H1; products leaving the doubly-negative range are dropped."""
    src = h1_space(bmap.source)
    tgt = h1_space(bmap.target)
    return _induced_matrix(src, tgt, bmap, lambda lab: lab[1] <= -1 and lab[2] <= -1)


def induced_coh_maps(bmap: BundleMap) -> tuple[Mat, Mat]:
    return induced_h0(bmap), induced_h1(bmap)
