"""Shared oracles and generators.

The elimination oracle here is deliberately naive (plain rational Gaussian
elimination) and independent of the package's fraction-free path.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hypsyz.bundles import BundleMap, ShortExactSequence, SplitBundle, evaluation_sequence
from hypsyz.polynomials import HomPoly


def naive_rank(rows) -> int:
    """Textbook Gaussian elimination over Fraction; returns the rank."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1) / m[rank][c]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def random_poly(rng: random.Random, degree: int) -> HomPoly:
    return HomPoly(degree, [Fraction(rng.randint(-3, 3)) for _ in range(degree + 1)])


def random_bundle(rng: random.Random, max_rank=3, degrees=(-4, 4)) -> SplitBundle:
    rank = rng.randint(1, max_rank)
    return SplitBundle([rng.randint(*degrees) for _ in range(rank)])


def twisted_evaluation_ses(rng: random.Random) -> ShortExactSequence:
    """Evaluation sequence of a random globally generated bundle, twisted by a
    random amount; negative twists make the connecting map nonzero."""
    fdeg = [rng.randint(0, 4) for _ in range(rng.randint(1, 3))]
    ses = evaluation_sequence(SplitBundle(fdeg))
    k = rng.randint(-3, 2)
    return ShortExactSequence(ses.sub.twist(k), ses.quot.twist(k))


def split_ses(rng: random.Random) -> ShortExactSequence:
    """A split exact sequence dressed with a random off-diagonal map."""
    a_deg = [rng.randint(-3, 0) for _ in range(rng.randint(1, 2))]
    q_deg = [rng.randint(0, 3) for _ in range(rng.randint(1, 2))]
    A = SplitBundle(a_deg)
    Q = SplitBundle(q_deg)
    B = A.direct_sum(Q)
    off_diag = {(i, j): random_poly(rng, q_deg[i] - a_deg[j])
                for i in range(Q.rank) for j in range(A.rank)}
    sub_entries = {}
    for j in range(A.rank):
        sub_entries[(j, j)] = HomPoly(0, [1])
        for i in range(Q.rank):
            sub_entries[(A.rank + i, j)] = off_diag[(i, j)]
    quot_entries = {}
    for i in range(Q.rank):
        quot_entries[(i, A.rank + i)] = HomPoly(0, [1])
        for j in range(A.rank):
            quot_entries[(i, j)] = off_diag[(i, j)].scale(-1)
    sub = BundleMap(A, B, sub_entries)
    quot = BundleMap(B, Q, quot_entries)
    return ShortExactSequence(sub, quot)
