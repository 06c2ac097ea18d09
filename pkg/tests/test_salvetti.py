from __future__ import annotations

from arrmorse.lattice import build_lattice, whitney_numbers
from arrmorse.salvetti import (build_salvetti, check_local_criticality, closed_form_field, critical_by_neighbors,
                               critical_by_slice, opposite_chamber_bijection, recursive_field, salvetti_boundary_cells,
                               validate_field)


def test_two_points_field(r1):
    mf = r1.field
    sig = lambda cell: tuple(r1.poset.facets[i].signs for i in cell)
    pairs = {(sig(a), sig(b)) for a, b in mf.pairs}
    assert pairs == {(((1, -1), (1, -1)), ((1, -1), (0, -1))),
                     (((1, 1), (1, 1)), ((1, 1), (1, 0)))}
    crit = {sig(c) for cs in mf.critical for c in cs}
    assert crit == {((-1, -1), (-1, -1)), ((-1, -1), (0, -1)), ((1, -1), (1, 0))}
    assert mf.critical_counts() == [1, 2]


def test_a2_field(a2):
    assert len(a2.field.pairs) == 9
    assert a2.field.critical_counts() == [1, 3, 2]


def test_critical_counts_are_whitney(suite_run):
    assert suite_run.field.critical_counts() == whitney_numbers(build_lattice(suite_run.arrangement))


def test_single_critical_vertex_is_base(suite_run):
    (c0,), base = suite_run.field.critical[0], suite_run.order.order[0]
    assert c0 == (base, base)


def test_field_is_acyclic_matching(suite_run):
    rep = suite_run.field.report
    assert rep.matching and rep.incidence and rep.acyclic


def test_characterizations_agree(suite_run):
    poset, order, mf = suite_run.poset, suite_run.order, suite_run.field
    assert recursive_field(poset, order) == closed_form_field(poset, order)
    cells = build_salvetti(poset)
    unmatched = {c for c in cells if c not in mf.match}
    assert unmatched == critical_by_neighbors(poset, order, cells) == critical_by_slice(poset, order, cells)
    assert check_local_criticality(mf)


def test_opposite_chamber_bijection(suite_run):
    out = opposite_chamber_bijection(suite_run.field)
    assert len(out) == sum(suite_run.field.critical_counts())


def test_validate_field_flags_cycle():
    square = {"e1": ["a", "b"], "e2": ["b", "c"], "e3": ["c", "d"], "e4": ["d", "a"]}
    bd = lambda c: square.get(c, [])
    assert validate_field([], bd).valid
    assert validate_field([("a", "e1"), ("b", "e2")], bd).valid
    bad = validate_field([("a", "e1"), ("b", "e2"), ("c", "e3"), ("d", "e4")], bd)
    assert bad.matching and not bad.acyclic
    assert not validate_field([("a", "e1"), ("a", "e4")], bd).matching


def test_zero_cells_have_empty_boundary(r1):
    assert all(salvetti_boundary_cells(r1.poset, (c, c)) == [] for c in r1.poset.chambers)
