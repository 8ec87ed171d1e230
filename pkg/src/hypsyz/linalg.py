"""Exact linear algebra over the rationals.

Matrices carry fractions.Fraction entries.  Rank and kernel computations run
fraction-free (Bareiss) elimination on denominator-cleared integer rows, so
intermediate values stay integral; results are exact, never rounded.  All
values are immutable after construction and every function is pure, so
concurrent use is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence


def as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Mat:
    """Dense rational matrix with an explicit shape."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: Optional[int] = None):
        data = [tuple(as_fraction(v) for v in row) for row in rows]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.rows = tuple(data)
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[Fraction(0)] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)]
                    for j in range(self.ncols)], ncols=self.nrows)

    def mul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = other.transpose().rows
        return Mat([[sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self.rows], ncols=other.ncols)

    def apply(self, vec: Sequence) -> list[Fraction]:
        v = [as_fraction(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"Mat({self.nrows}x{self.ncols})"


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # Row scaling by a positive rational changes neither rank nor kernel.
    cleared = []
    for row in rows:
        mult = lcm(*(f.denominator for f in row)) if row else 1
        cleared.append([int(f * mult) for f in row])
    return cleared


def _bareiss_echelon(rows: list[list[int]]) -> tuple[int, list[list[int]], list[int]]:
    """Fraction-free row echelon; returns (rank, echelon rows, pivot columns)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pc = rows[r][c]
        top = rows[r]
        for i in range(r + 1, m):
            cur = rows[i]
            factor = cur[c]
            if factor == 0 and prev == 1:
                continue
            for j in range(c, n):
                num = cur[j] * pc - factor * top[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free step not exact")
                cur[j] = q
        prev = pc
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, rows, piv_cols


def _fraction_echelon(rows: list[list[Fraction]]) -> tuple[int, list[list[Fraction]], list[int]]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        top = rows[r]
        for i in range(r + 1, m):
            factor = rows[i][c]
            if factor:
                rows[i] = [a - factor * b for a, b in zip(rows[i], top)]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, rows, piv_cols


def matrix_rank(matrix: Mat) -> int:
    """Exact rank via fraction-free elimination (rational fallback)."""
    ints = _integer_rows(matrix.rows)
    try:
        rank, _, _ = _bareiss_echelon(ints)
    except ArithmeticError:
        rank, _, _ = _fraction_echelon([[Fraction(v) for v in row] for row in ints])
    return rank


def rank_kernel(matrix: Mat) -> tuple[int, "Subspace"]:
    """Exact rank and right kernel of ``matrix``; rank + dim kernel = ncols."""
    ints = _integer_rows(matrix.rows)
    try:
        rank, ech, piv_cols = _bareiss_echelon([row[:] for row in ints])
        echelon: list[Sequence] = ech
    except ArithmeticError:
        # Bareiss divisibility can only fail on adversarial pivot patterns;
        # rational elimination is always available.
        rank, echelon, piv_cols = _fraction_echelon(
            [[Fraction(v) for v in row] for row in ints])
    n = matrix.ncols
    piv_set = set(piv_cols)
    kernel_rows = []
    for free in range(n):
        if free in piv_set:
            continue
        v: list[Fraction] = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            c = piv_cols[r]
            acc = Fraction(0)
            row = echelon[r]
            for j in range(c + 1, n):
                if v[j]:
                    acc += row[j] * v[j]
            v[c] = -acc / row[c]
        kernel_rows.append(v)
    return rank, Subspace.span(kernel_rows, ambient=n)


def solve(matrix: Mat, rhs: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of ``matrix @ x = rhs``, or None when inconsistent."""
    b = [as_fraction(v) for v in rhs]
    if len(b) != matrix.nrows:
        raise ValueError("rhs length mismatch")
    aug = [list(row) + [bv] for row, bv in zip(matrix.rows, b)]
    if not aug:
        return [Fraction(0)] * matrix.ncols
    rank, ech, piv_cols = _fraction_echelon(aug)
    n = matrix.ncols
    if any(c == n for c in piv_cols):
        return None
    x = [Fraction(0)] * n
    for r in range(rank - 1, -1, -1):
        c = piv_cols[r]
        acc = ech[r][n]
        for j in range(c + 1, n):
            if x[j]:
                acc -= ech[r][j] * x[j]
        x[c] = acc  # pivot normalized to 1 by _fraction_echelon
    return x


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rank, ech, piv_cols = _fraction_echelon(rows)
    ech = ech[:rank]
    for r in range(rank - 1, -1, -1):
        c = piv_cols[r]
        for i in range(r):
            factor = ech[i][c]
            if factor:
                ech[i] = [a - factor * b for a, b in zip(ech[i], ech[r])]
    return ech, piv_cols


class Subspace:
    """Linear subspace of Q^ambient held as a canonical reduced echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: tuple, pivots: tuple):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, rows: Iterable[Sequence], ambient: Optional[int] = None) -> "Subspace":
        data = [[as_fraction(v) for v in row] for row in rows]
        if ambient is None:
            if not data:
                raise ValueError("ambient dimension required for an empty span")
            ambient = len(data[0])
        if any(len(row) != ambient for row in data):
            raise ValueError("ambient dimension mismatch")
        rref_rows, piv_cols = _rref(data)
        return cls(ambient, tuple(tuple(r) for r in rref_rows), tuple(piv_cols))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        """Residue of ``vec`` after eliminating every pivot coordinate."""
        v = [as_fraction(x) for x in vec]
        if len(v) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        for row, c in zip(self.basis, self.pivots):
            factor = v[c]
            if factor:
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(list(self.basis) + list(other.basis), ambient=self.ambient)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace.span([], ambient=self.ambient)
        # x spans of self plus y spans of other meeting: kernel of [A^T | -B^T].
        stacked = Mat([[*cols] for cols in zip(*[list(r) for r in self.basis])],
                      ncols=self.dim)
        other_t = Mat([[*cols] for cols in zip(*[list(r) for r in other.basis])],
                      ncols=other.dim)
        combined = Mat([list(a) + [-v for v in b] for a, b in zip(stacked.rows, other_t.rows)],
                       ncols=self.dim + other.dim)
        _, ker = rank_kernel(combined)
        vectors = []
        for combo in ker.basis:
            vec = [Fraction(0)] * self.ambient
            for coef, row in zip(combo[: self.dim], self.basis):
                if coef:
                    vec = [a + coef * b for a, b in zip(vec, row)]
            vectors.append(vec)
        return Subspace.span(vectors, ambient=self.ambient)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
