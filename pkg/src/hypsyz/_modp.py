"""Internal mod-p linear algebra used to accelerate exact computations.

Nothing computed here is trusted on its own: a mod-p rank only ever serves as
a lower bound for the rational rank, and callers either certify it (by
exhibiting an exactly verified kernel of matching dimension, or by meeting an
independent upper bound) or fall back to exact elimination.  Arithmetic is
integer-only; primes are below 2^31 so products fit in int64.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

import numpy as np

PRIMES = (2147483629, 2147483587, 2147482943, 2147481563)


class BadPrime(Exception):
    """A denominator vanished mod p; retry with another prime."""


def fraction_mod(value: Fraction, p: int) -> int:
    den = value.denominator % p
    if den == 0:
        raise BadPrime
    return value.numerator % p * pow(den, -1, p) % p


def rref_modp(matrix: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    """In-place reduced row echelon mod p; returns (rank, pivot columns, matrix)."""
    m = matrix % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots, m


def kernel_basis_modp(rref: np.ndarray, pivots: list[int], ncols: int,
                      p: int) -> list[np.ndarray]:
    """Right-kernel basis read off a reduced echelon form."""
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[free] = 1
        for row, c in enumerate(pivots):
            v[c] = (-int(rref[row, free])) % p
        basis.append(v)
    return basis


def rational_reconstruct(residue: int, p: int) -> Optional[Fraction]:
    """Wang-style lift of residue mod p to n/d with |n|, d <= sqrt(p/2)."""
    bound = isqrt(p // 2)
    r0, r1 = p, residue % p
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


def lift_vector(vec: np.ndarray, p: int) -> Optional[list[Fraction]]:
    out = []
    for residue in vec:
        lifted = rational_reconstruct(int(residue), p)
        if lifted is None:
            return None
        out.append(lifted)
    return out


class ModpEchelon:
    """Incremental row echelon mod p for rank certification of big row sets."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce_rows(self, batch: np.ndarray) -> np.ndarray:
        """Residues of a batch of rows against the echelon (no insertion)."""
        p = self.p
        if batch.ndim == 1:
            batch = batch.reshape(1, -1)
        batch = batch % p
        # Stored rows are processed in insertion order, so entries a row picks
        # up at later pivot columns are cleared by later iterations.
        for row, c in zip(self.rows, self.pivot_cols):
            coeffs = batch[:, c].copy()
            hit = np.nonzero(coeffs)[0]
            if hit.size:
                batch[hit] = (batch[hit] - np.outer(coeffs[hit], row)) % p
        return batch

    def add_rows(self, batch: np.ndarray) -> int:
        """Reduce a batch of rows into the echelon; returns new total rank."""
        p = self.p
        batch = self.reduce_rows(batch)
        for i in range(batch.shape[0]):
            vec = batch[i]
            nz = np.nonzero(vec)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            vec = vec * pow(int(vec[c]), -1, p) % p
            if i + 1 < batch.shape[0]:
                coeffs = batch[i + 1:, c].copy()
                hit = np.nonzero(coeffs)[0]
                if hit.size:
                    batch[i + 1 + hit] = (batch[i + 1 + hit]
                                          - np.outer(coeffs[hit], vec)) % p
            self.rows.append(vec.copy())
            self.pivot_cols.append(c)
        return self.rank
