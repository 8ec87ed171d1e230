import random
from fractions import Fraction

import pytest

from hypsyz.bundles import (BundleMap, ShortExactSequence, SplitBundle, coh,
                            evaluation_sequence, h0_space, h1_space,
                            induced_coh_maps, induced_h0, induced_h1,
                            shuffle_sign)
from hypsyz.linalg import matrix_rank
from hypsyz.polynomials import HomPoly

from conftest import random_poly

S = HomPoly(1, [0, 1])
T = HomPoly(1, [1, 0])


def test_bundle_algebra_examples():
    assert SplitBundle([1, 1]).wedge(2) == SplitBundle([2])
    assert SplitBundle([0, 3]).dual() == SplitBundle([0, -3])
    # det of the rank-2 pushforward: O(x) + O(n-x) wedges to O(n)
    for x, n in [(1, 2), (2, 5), (3, 6)]:
        assert SplitBundle([x, n - x]).wedge(2) == SplitBundle([n])
    assert SplitBundle([1, 2]).wedge(3).rank == 0
    assert SplitBundle([1, 1]).sym(2) == SplitBundle([2, 2, 2])
    assert SplitBundle([1, -1]).tensor(SplitBundle([2])) == SplitBundle([3, 1])
    assert SplitBundle([2]).twist(-3) == SplitBundle([-1])


def test_coh_examples():
    assert (coh(SplitBundle([3])).h0, coh(SplitBundle([3])).h1) == (4, 0)
    assert (coh(SplitBundle([-4])).h0, coh(SplitBundle([-4])).h1) == (0, 3)
    assert (coh(SplitBundle([2, -3])).h0, coh(SplitBundle([2, -3])).h1) == (3, 2)


def test_riemann_roch_and_serre_duality_bulk():
    rng = random.Random(7)
    for _ in range(1200):
        degrees = [rng.randint(-7, 7) for _ in range(rng.randint(1, 4))]
        bundle = SplitBundle(degrees)
        data = coh(bundle)
        assert data.h0 - data.h1 == bundle.degree + bundle.rank
        for a in degrees:
            assert SplitBundle([a]).h1() == SplitBundle([-a - 2]).h0()


def test_coh_basis_labels():
    space = h0_space(SplitBundle([2]))
    assert space.basis == ((0, 0, 2), (0, 1, 1), (0, 2, 0))
    space1 = h1_space(SplitBundle([-3]))
    assert space1.basis == ((0, -2, -1), (0, -1, -2))


def test_evaluation_sequence_examples():
    assert evaluation_sequence(SplitBundle([1, 2])).A.rank == 3
    assert evaluation_sequence(SplitBundle([0])).A.rank == 0
    ses = evaluation_sequence(SplitBundle([2]))
    assert ses.A == SplitBundle([-1, -1])
    with pytest.raises(ValueError):
        evaluation_sequence(SplitBundle([-1, 2]))


def test_evaluation_sequence_is_exact_complex():
    for degrees in [[1], [2], [1, 2], [0, 3], [2, 2, 1]]:
        ses = evaluation_sequence(SplitBundle(degrees))
        ses.validate()
        assert ses.quot.compose(ses.sub).entries == {}


def test_induced_h0_multiplication_by_s():
    f = BundleMap(SplitBundle([0]), SplitBundle([1]), {(0, 0): S})
    mat = induced_h0(f)
    # basis of H0(O(1)) is (t, s); the image of 1 is s
    assert [row[0] for row in mat.rows] == [0, 1]


def test_induced_h1_zero_target():
    f = BundleMap(SplitBundle([-3]), SplitBundle([-1]), {(0, 0): S.multiply(S)})
    assert induced_h1(f).shape == (0, 2)


def test_induced_h1_monomial_calculus():
    f = BundleMap(SplitBundle([-4]), SplitBundle([-2]), {(0, 0): S.multiply(T)})
    mat = induced_h1(f)
    # H1(O(-4)) basis: s^-3 t^-1, s^-2 t^-2, s^-1 t^-3; only the middle one
    # lands inside H1(O(-2)).
    assert mat.shape == (1, 3)
    assert mat.rows[0] == (0, 1, 0)
    assert matrix_rank(mat) == 1


def test_induced_maps_are_functorial():
    rng = random.Random(11)
    for _ in range(60):
        a = rng.randint(-3, 1)
        b = a + rng.randint(0, 3)
        c = b + rng.randint(0, 3)
        f = BundleMap(SplitBundle([a]), SplitBundle([b]),
                      {(0, 0): random_poly(rng, b - a)})
        g = BundleMap(SplitBundle([b]), SplitBundle([c]),
                      {(0, 0): random_poly(rng, c - b)})
        composite = g.compose(f)
        assert induced_h0(composite) == induced_h0(g).mul(induced_h0(f))
        assert induced_h1(composite) == induced_h1(g).mul(induced_h1(f))
        h0_mat, h1_mat = induced_coh_maps(composite)
        assert h0_mat == induced_h0(composite)
        assert h1_mat == induced_h1(composite)


def test_shuffle_sign():
    assert shuffle_sign((0, 1), (2, 3)) == 1
    assert shuffle_sign((2, 3), (0, 1)) == 1
    assert shuffle_sign((1,), (0,)) == -1
    assert shuffle_sign((0, 2), (1,)) == -1


def test_ses_rejects_non_exact():
    sub = BundleMap(SplitBundle([-1]), SplitBundle([0, 0]), {(0, 0): T})
    quot = BundleMap(SplitBundle([0, 0]), SplitBundle([1]), {(0, 0): S, (0, 1): T})
    ses = ShortExactSequence(sub, quot)
    with pytest.raises(ValueError):
        ses.validate()
