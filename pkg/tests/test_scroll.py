import random

import pytest

from hypsyz.curve import valid_x_values, validate
from hypsyz.scroll import (BettiTable, ComplexTerm, DivClass, adjunction_genus,
                           betti_table, canonical_class, curve_class,
                           h1_bridge_check, h1_bridge_failures, hilbert_check,
                           hilbert_first_failure, intersect, scroll_data,
                           scroll_resolution_terms)


def grid_params():
    for g in range(2, 6):
        for d in range(2 * g + 1, 2 * g + 7):
            for x in valid_x_values(g, d):
                yield validate(g, d, x)


def test_intersection_examples():
    H, R = DivClass(1, 0), DivClass(0, 1)
    for f in (2, 3, 7):
        assert intersect(H, H, f) == f
        assert intersect(H, R, f) == 1
        assert intersect(R, R, f) == 0
    p = validate(2, 5, 1)
    assert intersect(curve_class(p), H, p.n) == 5


def test_curve_class_examples():
    assert curve_class(validate(2, 5, 1)) == DivClass(2, 1)
    assert curve_class(validate(2, 6, 1)) == DivClass(2, 0)
    assert adjunction_genus(curve_class(validate(3, 7, 1)), 3) == 3


def test_curve_class_grid_properties():
    for p in grid_params():
        cls = curve_class(p)
        assert intersect(cls, DivClass(1, 0), p.n) == p.d
        assert adjunction_genus(cls, p.n) == p.g


def test_scroll_data():
    data = scroll_data(validate(3, 8, 1))
    assert (data.f, data.e1, data.e2) == (4, 3, 1)
    assert data.ambient_dim == 5
    assert data.dim_g_space == 2
    balanced = scroll_data(validate(2, 7, 2))
    assert balanced.e1 == balanced.e2 == 2


def test_resolution_terms_examples():
    assert scroll_resolution_terms(0, 2) == [
        ComplexTerm(0, 0, 1), ComplexTerm(1, -2, 1)]
    assert scroll_resolution_terms(-1, 2) == [
        ComplexTerm(0, -1, 2), ComplexTerm(1, -2, 2)]
    assert scroll_resolution_terms(1, 3) == [
        ComplexTerm(0, 0, 2), ComplexTerm(1, -1, 3), ComplexTerm(2, -3, 1)]
    with pytest.raises(ValueError):
        scroll_resolution_terms(-2, 3)


def test_resolution_terms_scroll_pattern():
    # b = 0 always resolves the scroll itself: 1, then C(f, j+1)*j generators
    for f in range(2, 8):
        terms = scroll_resolution_terms(0, f)
        assert terms[0] == ComplexTerm(0, 0, 1)
        for term in terms[1:]:
            j = term.j
            from math import comb
            assert term.mult == comb(f, j + 1) * j
            assert term.twist == -(j + 1)


def test_betti_tables_frozen():
    assert betti_table(validate(2, 5, 1)).entries == {
        (0, 0): 1, (1, 2): 1, (1, 3): 2, (2, 4): 2}
    assert betti_table(validate(2, 6, 1)).entries == {
        (0, 0): 1, (1, 2): 4, (2, 3): 2, (2, 4): 3, (3, 5): 2}
    assert betti_table(validate(3, 7, 1)).entries == {
        (0, 0): 1, (1, 2): 3, (1, 3): 3, (2, 3): 2, (2, 4): 6, (3, 5): 3}


def test_betti_table_shape_invariants():
    for p in grid_params():
        table = betti_table(p)
        assert table.entry(0, 0) == 1
        assert all(p_ > 0 for (p_, _) in table.entries if (p_, _) != (0, 0))
        assert table.max_p == p.d - p.g - 1
        assert table.alternating_total() == 0
        # top of the resolution: g copies in the deepest twist
        assert table.entry(p.d - p.g - 1, p.d - p.g + 1) == p.g


def test_hilbert_examples():
    p = validate(2, 5, 1)
    table = betti_table(p)
    assert hilbert_check(p, table)
    p26 = validate(2, 6, 1)
    assert hilbert_check(p26, betti_table(p26))


def test_hilbert_grid():
    for p in grid_params():
        assert hilbert_first_failure(p, betti_table(p)) is None


def test_hilbert_detects_corruption():
    p = validate(2, 5, 1)
    table = betti_table(p)
    broken = BettiTable(p, {**table.entries, (1, 3): 1})
    assert hilbert_first_failure(p, broken) is not None


def test_bridge_examples():
    from math import comb
    assert betti_table(validate(2, 5, 1)).entry(1, 3) == 2 == comb(2, 1) * 1
    assert betti_table(validate(2, 6, 1)).entry(2, 4) == 3 == comb(3, 1) * 1
    assert betti_table(validate(3, 7, 1)).entry(2, 4) == 6 == comb(3, 1) * 2


def test_bridge_grid():
    for p in grid_params():
        assert h1_bridge_check(p)
        assert h1_bridge_failures(p) == []


def test_bridge_matches_wedge_h1():
    from hypsyz.curve import wedge_h1
    for p in grid_params():
        table = betti_table(p)
        for i in range(0, p.g + 1):
            assert table.entry(p.d - p.g - i - 1, p.d - p.g - i + 1) == wedge_h1(p, i)


def test_table_rejects_bad_shapes():
    p = validate(2, 5, 1)
    with pytest.raises(ValueError):
        BettiTable(p, {(0, 0): 1, (0, 2): 1})
    with pytest.raises(ValueError):
        BettiTable(p, {(0, 0): 2})
