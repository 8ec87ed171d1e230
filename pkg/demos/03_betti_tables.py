"""Graded Betti tables via the scroll mapping cone, audited by Hilbert series.

The curve lies on a rational normal scroll of degree d-g-1, and its structure
sheaf is resolved by a mapping cone of two standard complexes.  Betti numbers
are read off the term twists and then audited: the alternating sum of the
table must reproduce the Hilbert function of the coordinate ring in every
degree, and the second strand must match the h1 values of the wedge powers.
"""

from hypsyz.cli import render_betti_text
from hypsyz import (betti_table, curve_class, adjunction_genus, h1_bridge_check,
                    hilbert_check, intersect, DivClass, scroll_data,
                    scroll_resolution_terms, validate, wedge_h1)

print("== intersection theory on the scroll ==")
p = validate(3, 7, 1)
data = scroll_data(p)
print(f"scroll type ({data.e1}, {data.e2}), degree {data.f}, in P^{data.ambient_dim}")
cls = curve_class(p)
print(f"curve class {cls.a}H + ({cls.b})R,",
      "degree =", intersect(cls, DivClass(1, 0), p.n),
      " adjunction genus =", adjunction_genus(cls, p.n))

print()
print("== the standard resolution terms ==")
for b, f in [(0, 3), (-1, 2), (1, 3)]:
    terms = [(t.j, t.twist, t.mult) for t in scroll_resolution_terms(b, f)]
    print(f"b={b}, f={f}: (step, twist, multiplicity) = {terms}")

print()
for (g, d) in [(2, 5), (2, 6), (3, 7), (4, 10)]:
    from hypsyz import valid_x_values
    p = validate(g, d, valid_x_values(g, d)[0])
    table = betti_table(p)
    print(f"== Betti table for g={g}, d={d} ==")
    print(render_betti_text(table))
    print("hilbert audit:", "pass" if hilbert_check(p, table) else "FAIL",
          " h1 bridge:", "pass" if h1_bridge_check(p, table) else "FAIL")
    strand = {i: table.entry(d - g - i - 1, d - g - i + 1) for i in range(g + 1)}
    print("second strand vs wedge h1:",
          {i: (strand[i], wedge_h1(p, i)) for i in range(g + 1)})
    print()
