from __future__ import annotations

from fractions import Fraction

import pytest

from arrmorse.laurent import is_zero_matrix, matmul
from arrmorse.morse import (CrossingVector, Galleries, abelian_exponent, admissible_sequences, boundary_matrix,
                            crossing_counts, gallery_word, is_ordered, sequence_sign, winding)


def _sequences(run, src):
    return admissible_sequences(run.field, src)


def test_two_points_sequences(r1):
    src, dst = r1.field.critical[1][0], r1.field.critical[0][0]
    seqs = _sequences(r1, src)[dst]
    assert [s.chamber_chain() for s in seqs] == [(0, 0), (0, 1, 0)]
    assert [(s.length, s.blocks) for s in seqs] == [(1, 1), (2, 1)]
    assert [sequence_sign(r1.field, s) for s in seqs] == [1, -1]
    g = Galleries(r1.field)
    assert crossing_counts(g, seqs[0]).mu == (0, 0)
    assert crossing_counts(g, seqs[1]).mu == (2, 0)
    assert crossing_counts(g, seqs[1]).exponents() == (1, 0)


def test_galleries(r1):
    g = Galleries(r1.field)
    assert g.tree_path(0) == [0]
    assert g.tree_path(2) == [2, 1, 0]
    assert g.crossings(g.tree_path(2)) == [1, 0]
    assert sorted(g.crossings(g.minimal_gallery(0, 2))) == [0, 1]


def test_galleries_minimal_on_a2(a2):
    g = Galleries(a2.field)
    p = a2.poset
    for c in p.chambers:
        for d in p.chambers:
            crossed = g.crossings(g.minimal_gallery(c, d))
            assert sorted(crossed) == sorted(p.separating(c, d))


def test_abelian_exponent_examples():
    assert abelian_exponent(CrossingVector((0,), (0,), (0,)), 0) == 0
    assert abelian_exponent(CrossingVector((1,), (0,), (1,)), 0) == 1
    assert abelian_exponent(CrossingVector((2,), (0,), (0,)), 0) == 1
    with pytest.raises(AssertionError):
        abelian_exponent(CrossingVector((4,), (0,), (0,)), 0)
    assert abelian_exponent(CrossingVector((4,), (0,), (0,)), 0, strict=False) == 2


def test_two_points_d1(r1):
    mc = r1.complex("full")
    assert [[str(x) for x in row] for row in mc.matrices[1]] == [["1 - t1", "1 - t2"]]


def test_every_sequence_ordered_and_winding(suite_run):
    mf = suite_run.field
    g = Galleries(mf)
    m = len(suite_run.arrangement.hyperplanes)
    for k in range(1, len(mf.critical)):
        for src in mf.critical[k]:
            for seqs in admissible_sequences(mf, src).values():
                for s in seqs:
                    assert is_ordered(mf, s)
                    assert winding(gallery_word(g, s), m) == crossing_counts(g, s).exponents()


def test_boundary_algebra(suite_run):
    full, reduced = suite_run.complex("full"), suite_run.complex("reduced")
    assert full.d_squared_zero()
    assert full.vanishes_at_one()
    assert full.matrices == reduced.matrices


def test_a2_product_is_zero(a2):
    mc = a2.complex()
    assert is_zero_matrix(matmul(mc.matrices[1], mc.matrices[2], mc.nvars))


def test_bad_mode(r1):
    with pytest.raises(ValueError):
        boundary_matrix(r1.field, "other")
