"""Split bundles on the projective line and their two-chart cohomology.

Every vector bundle on P1 splits as a sum of line bundles O(a), so a bundle
is just a tuple of integers here.  H0 and H1 come with explicit monomial
bases, maps between bundles are matrices of homogeneous forms acting by
monomial calculus, and connecting homomorphisms are computed from chart
lifts.  Everything is exact rational arithmetic.
"""

from hypsyz import (BundleMap, HomPoly, ShortExactSequence, SplitBundle, coh,
                    connecting_hom, evaluation_sequence, induced_coh_maps)

S = HomPoly(1, [0, 1])   # the coordinate s
T = HomPoly(1, [1, 0])   # the coordinate t

print("== cohomology of split bundles ==")
for degrees in [(3,), (-4,), (2, -3), (1, 1, -2)]:
    bundle = SplitBundle(degrees)
    data = coh(bundle)
    print(f"O{degrees}: h0 = {data.h0}, h1 = {data.h1}, "
          f"chi = {data.h0 - data.h1} = deg + rank = {bundle.degree + bundle.rank}")

print()
print("H0(O(2)) basis:", [f"s^{i} t^{j}" for (_, i, j) in coh(SplitBundle([2])).h0_space.basis])
print("H1(O(-3)) basis:", [f"s^{i} t^{j}" for (_, i, j) in coh(SplitBundle([-3])).h1_space.basis])

print()
print("== bundle algebra ==")
W = SplitBundle([1, 2])
print("W =", W)
print("W* =", W.dual(), " W(3) =", W.twist(3))
print("wedge^2 W =", W.wedge(2), " sym^2 W =", W.sym(2))

print()
print("== the evaluation sequence of a globally generated bundle ==")
ses = evaluation_sequence(SplitBundle([1, 2]))
print(f"0 -> {ses.A} -> {ses.B} -> {ses.Q} -> 0")
print("kernel rank equals h0 of the (-1)-twist:", ses.A.rank)

print()
print("== induced maps on cohomology ==")
times_s = BundleMap(SplitBundle([0]), SplitBundle([1]), {(0, 0): S})
h0_mat, h1_mat = induced_coh_maps(times_s)
print("multiplication by s on H0(O(0)) -> H0(O(1)):", [list(r) for r in h0_mat.rows])

times_st = BundleMap(SplitBundle([-4]), SplitBundle([-2]), {(0, 0): S.multiply(T)})
_, h1_mat = induced_coh_maps(times_st)
print("multiplication by st on H1(O(-4)) -> H1(O(-2)):", [list(r) for r in h1_mat.rows])
print("(only s^-2 t^-2 survives the monomial calculus)")

print()
print("== connecting homomorphism of the Euler sequence ==")
sub = BundleMap(SplitBundle([-2]), SplitBundle([-1, -1]),
                {(0, 0): T.scale(-1), (1, 0): S})
quot = BundleMap(SplitBundle([-1, -1]), SplitBundle([0]),
                 {(0, 0): S, (0, 1): T})
delta = connecting_hom(ShortExactSequence(sub, quot))
print("H0(O) -> H1(O(-2)) is", [list(r) for r in delta.rows],
      "- an isomorphism of lines")
