from __future__ import annotations

from fractions import Fraction

from arrmorse.catalog import arrangement
from arrmorse.geometry import Arrangement
from arrmorse.faces import face_poset
from arrmorse.lattice import build_lattice
from arrmorse.polar import (GenericFrame, audit_order, facet_min_vertex, polar_compare, polar_order_all,
                            theta_key, verify_frame)

F = Fraction


def test_theta_key_examples():
    assert theta_key((F(0), F(0))).rho2 == 0
    assert theta_key((F(2), F(1))) < theta_key((F(1), F(1)))
    a, b = theta_key((F(1), F(2))), theta_key((F(2), F(4)))
    assert a.angles == b.angles and a < b


def test_verify_frame_rejects_bad_frames():
    on_plane = Arrangement.from_normals([[1]], [0])
    assert not verify_frame(on_plane, GenericFrame.identity(1)).origin_in_chamber
    b2 = arrangement("boolean2")
    shifted = GenericFrame(GenericFrame.identity(2).matrix, (F(-1), F(-1)), 0)
    assert not verify_frame(b2, shifted).transversal


def test_sampled_frames_pass(suite_run):
    po = suite_run.order
    assert verify_frame(suite_run.arrangement, po.frame).passed


def test_two_points_order(r1):
    po = r1.order
    assert po.order == [0, 3, 1, 4, 2]
    signs = [r1.poset.facets[f].signs for f in po.order]
    assert signs == [(-1, -1), (0, -1), (1, -1), (1, 0), (1, 1)]


def test_min_vertex_examples(r1):
    po = r1.order
    p, _, _ = facet_min_vertex(po, 0)
    assert all(x == 0 for x in p)
    p_chamber, _, _ = facet_min_vertex(po, 1)
    p_point, _, _ = facet_min_vertex(po, 3)
    assert p_chamber == p_point


def test_polar_compare_matches_order(suite_run):
    po = suite_run.order
    for f, g in zip(po.order, po.order[1:]):
        assert polar_compare(po, f, g) == -1
        assert polar_compare(po, g, f) == 1


def test_base_chamber_first_and_slices_first(suite_run):
    po = suite_run.order
    fs = suite_run.poset.facets
    assert fs[po.order[0]].codim == 0 and po.meets(po.order[0], 0)
    n = suite_run.arrangement.dim
    for k in range(n):
        for f in suite_run.poset.of_codim(k):
            if po.meets(f):
                assert all(po.less(f, g) for g in suite_run.poset.of_codim(k + 1))


def test_audit_passes(suite_run):
    assert audit_order(suite_run.order, build_lattice(suite_run.arrangement)) == []


def test_empty_order():
    po = polar_order_all(face_poset(Arrangement((), 0)))
    assert po.order == [0]
