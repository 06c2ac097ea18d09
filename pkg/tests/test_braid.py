from __future__ import annotations

from fractions import Fraction

import pytest

from arrmorse import braid as br
from arrmorse.homology import homology
from arrmorse.pipeline import Run
from arrmorse.morse import boundary_matrix
from arrmorse.salvetti import build_salvetti, polar_gradient

T = br.Tableau.of


@pytest.fixture(scope="module")
def bc2():
    return br.braid_complex(2)


def test_tableau_basics():
    t = T([1, 2], [3])
    assert t.n == 2 and t.dim == 1 and t.is_standard
    assert str(t) == "[1 2|3]" and t.pretty() == "1 2\n3"
    with pytest.raises(br.BraidError):
        T([1, 3])


def test_moving_function_examples():
    assert br.moving_function(T([1, 2], [3]), 1, 3) == T([1, 2, 3])
    assert br.moving_function(T([1, 2], [3]), 0, 2) == T([2], [1], [3])


def test_t_block_example():
    block = br.t_block(br.identity(2), 2)
    assert block[0] == T([1, 2], [3])
    assert all(abs(u.nrows - br.identity(2).nrows) <= 1 for u in block)


def test_pi_k_examples():
    assert br.build_pi_k(2, 1).tableaux == [T([1, 2], [3]), T([2], [1, 3]), T([2, 3], [1])]
    assert len(br.build_pi_k(3, 2)) == 7
    assert br.build_pi_k(3, 0).tableaux == [br.identity(3)]


def test_meets_and_decompose():
    assert br.braid_meets_Vk(T([1, 2], [3]))
    assert not br.braid_meets_Vk(T([1, 3], [2]))
    assert br.braid_meets_Vk(br.identity(3))
    for t in br.build_pi_k(3, 2).tableaux:
        assert br.decompose(t) is not None


def test_cell_tableau_examples(bc2):
    chamber = bc2.tableau_to_cell(br.identity(2))
    assert chamber[0] == chamber[1]
    c, f = bc2.tableau_to_cell(T([2, 1, 3]))
    assert bc2.poset.facets[f].codim == 2
    assert bc2.cell_to_tableau((c, f)) == T([2, 1, 3])
    assert bc2.facet_tableau(bc2.tableau_to_cell(T([1, 2], [3]))[1]) == T([1, 2], [3])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip(n):
    bc = br.braid_complex(n)
    for cell in build_salvetti(bc.poset):
        assert bc.tableau_to_cell(bc.cell_to_tableau(cell)) == cell


def test_order_properties(bc2):
    po = br.braid_order(bc2)
    base = bc2.tableau_to_cell(br.identity(2))[0]
    assert po.order[0] == base
    pi1 = br.build_pi_k(2, 1).tableaux
    assert all(br.braid_polar_compare(po, bc2, a, b) == -1 for a, b in zip(pi1, pi1[1:]))
    for t in pi1:
        for f in bc2.poset.of_codim(2):
            assert po.less(bc2.facet_of[t], f)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_braid_matches_geometric_homology(n):
    bc = br.braid_complex(n)
    mf = polar_gradient(bc.poset, br.braid_order(bc))
    mc = boundary_matrix(mf)
    run = Run(bc.essential.arrangement)
    geo = run.complex()
    for spec in ("integral", [Fraction(2)] * mc.nvars, [Fraction(-1)] * mc.nvars):
        assert homology(mc.matrices, mf.critical_counts(), spec).ranks == \
            homology(geo.matrices, run.field.critical_counts(), spec).ranks


def test_equivariance(bc2):
    perm = [2, 3, 1]
    for f in bc2.poset.facets:
        t = bc2.facet_tableau(f.id)
        assert bc2.facet_signs(t.act(perm).standard()) == br.act_on_signs(bc2, f.signs, perm)
