from __future__ import annotations

from arrmorse.catalog import arrangement
from arrmorse.faces import compose, face_leq, face_poset
from arrmorse.geometry import Arrangement
from arrmorse.lattice import build_lattice, whitney_numbers
from arrmorse.salvetti import build_salvetti, salvetti_boundary_cells


def test_two_points_facets():
    p = face_poset(arrangement("two_points"))
    assert sorted(f.signs for f in p.facets) == [(-1, -1), (0, -1), (1, -1), (1, 0), (1, 1)]
    assert p.counts() == [3, 2]


def test_boolean_and_a2_counts():
    assert face_poset(arrangement("boolean2")).counts() == [4, 4, 1]
    assert face_poset(arrangement("a2")).counts() == [6, 6, 1]


def test_empty_arrangement():
    p = face_poset(Arrangement((), 0))
    assert p.counts() == [1]


def test_face_leq_examples():
    assert face_leq((1, -1), (1, 0))
    assert not face_leq((-1, -1), (1, 0))


def test_compose_examples():
    assert compose((1, 1), (1, 1)) == (1, 1)
    assert compose((1, 1), (0, -1)) == (1, -1)
    assert compose((-1, -1, 1), (0, 1, -1)) == (-1, 1, -1)


def test_witnesses_realize_signs(suite_run):
    arr = suite_run.arrangement
    for f in suite_run.poset.facets:
        assert arr.signs(f.witness) == f.signs


def test_zaslavsky(suite_run):
    assert len(suite_run.poset.chambers) == sum(whitney_numbers(build_lattice(suite_run.arrangement)))


def test_salvetti_cell_counts():
    assert len(build_salvetti(face_poset(arrangement("two_points")))) == 7
    assert len(build_salvetti(face_poset(arrangement("a2")))) == 24
    assert len(build_salvetti(face_poset(Arrangement((), 0)))) == 1


def test_salvetti_boundary_examples():
    p = face_poset(arrangement("two_points"))
    ids = {f.signs: f.id for f in p.facets}
    cell = (ids[(1, -1)], ids[(0, -1)])
    got = {p.facets[c].signs for c, _ in salvetti_boundary_cells(p, cell, 0)}
    assert got == {(1, -1), (-1, -1)}
    assert salvetti_boundary_cells(p, (ids[(1, 1)], ids[(1, 1)])) == []
    pa = face_poset(arrangement("a2"))
    origin = pa.of_codim(2)[0]
    assert len(salvetti_boundary_cells(pa, (pa.chambers[0], origin), 1)) == 6
