from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from arrmorse import braid as br
from arrmorse.geometry import Arrangement, ArrangementError
from arrmorse.homology import homology
from arrmorse.laurent import Laurent
from arrmorse.lattice import build_lattice, whitney_numbers
from arrmorse.pipeline import Run

NV = 2
exps = st.tuples(*[st.integers(-3, 3)] * NV)
laurents = st.dictionaries(exps, st.integers(-4, 4), max_size=4).map(lambda d: Laurent(NV, d))
values = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool)] * NV)


@given(laurents, laurents, laurents)
def test_laurent_ring_laws(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Laurent.zero(NV)
    assert a * Laurent.const(NV) == a


@given(laurents, laurents, values)
def test_laurent_evaluation_is_a_homomorphism(a, b, v):
    assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)
    assert (a + b).evaluate(v) == a.evaluate(v) + b.evaluate(v)


line = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(lambda t: t[0] or t[1])


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(line, min_size=2, max_size=4), st.integers(0, 3))
def test_random_plane_arrangements(lines, seed):
    try:
        arr = Arrangement.from_normals([[a, b] for a, b, _ in lines], [c for _, _, c in lines])
    except ArrangementError:
        assume(False)
    assume(arr.is_essential)
    run = Run(arr, seed)
    whitney = whitney_numbers(build_lattice(arr))
    assert len(run.poset.chambers) == sum(whitney)
    assert run.field.report.valid
    assert run.field.critical_counts() == whitney
    mc = run.complex()
    assert mc.d_squared_zero() and mc.vanishes_at_one()
    res = homology(mc.matrices, whitney)
    assert res.ranks == whitney and not any(res.torsion)
    rng = random.Random(seed)
    vals = [Fraction(rng.choice([-2, 2, 3]), rng.choice([1, 5])) for _ in range(mc.nvars)]
    generic = homology(mc.matrices, whitney, vals)
    assert generic.euler == sum((-1) ** k * b for k, b in enumerate(whitney))


@st.composite
def tableaux(draw, n):
    perm = draw(st.permutations(list(range(1, n + 2))))
    cuts = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    rows, cur = [], [perm[0]]
    for x, cut in zip(perm[1:], cuts):
        if cut:
            rows.append(cur)
            cur = []
        cur.append(x)
    rows.append(cur)
    return br.Tableau.of(*rows)


_COMPLEXES = {n: br.braid_complex(n) for n in (2, 3)}


@given(st.sampled_from([2, 3]).flatmap(lambda n: tableaux(n)))
def test_tableau_round_trip(t):
    bc = _COMPLEXES[t.n]
    cell = bc.tableau_to_cell(t)
    assert bc.cell_to_tableau(cell) == t
    assert bc.facet_tableau(cell[1]) == t.standard()


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(tableaux(n), st.permutations(list(range(1, n + 2))))))
def test_symmetric_group_equivariance(tp):
    t, perm = tp
    bc = _COMPLEXES[t.n]
    moved = t.act(perm)
    assert bc.chamber_signs(moved) == br.act_on_signs(bc, bc.chamber_signs(t), perm)
    assert bc.facet_signs(moved) == br.act_on_signs(bc, bc.facet_signs(t), perm)


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_pi_k_properties(nk):
    n, k = nk
    pi = br.build_pi_k(n, k)
    assert all(t.is_standard and t.dim == k and t.n == n for t in pi.tableaux)
    assert len({t.support() for t in pi.tableaux}) == len(pi)
    assert [br.decompose(t) for t in pi.tableaux] == list(pi.pairs)
    assert all(br.braid_meets_Vk(t) for t in pi.tableaux)


@given(st.integers(1, 4).flatmap(lambda n: tableaux(n)))
def test_moving_function_changes_rows_by_at_most_one(t):
    for r in range(1, t.size + 1):
        for j in range(0, t.nrows):
            try:
                u = br.moving_function(t, j, r)
            except br.BraidError:
                continue
            assert abs(u.nrows - t.nrows) <= 1
