"""Acceptance suite: one check per criterion, each printing a single PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import pytest
from sympy.functions.combinatorial.numbers import stirling

from arrmorse import braid as br
from arrmorse.catalog import SUITE, arrangement
from arrmorse.homology import homology
from arrmorse.lattice import build_lattice, whitney_numbers
from arrmorse.morse import Galleries, admissible_sequences, boundary_matrix, crossing_counts, mu_lemma_check
from arrmorse.pipeline import Run
from arrmorse.salvetti import (build_salvetti, closed_form_field, critical_by_neighbors, critical_by_slice,
                               polar_gradient, recursive_field, salvetti_boundary_cells, validate_field)

Result = Tuple[bool, str]
_RUNS: Dict[Tuple[str, int], Run] = {}


def _run(name: str, seed: int = 0) -> Run:
    if (name, seed) not in _RUNS:
        _RUNS[(name, seed)] = Run(arrangement(name), seed)
    return _RUNS[(name, seed)]


def _whitney(run: Run) -> List[int]:
    return whitney_numbers(build_lattice(run.arrangement))


def _first_failure(items) -> Result:
    bad = [msg for ok, msg in items if not ok]
    return (not bad, bad[0] if bad else "")


def check_minimality() -> Result:
    items = []
    for name in SUITE:
        run = _run(name)
        b = _whitney(run)
        counts = run.field.critical_counts()
        items.append((counts == b, f"{name}: critical {counts} vs Whitney {b}"))
        items.append((sum(b) == len(run.poset.chambers), f"{name}: Zaslavsky fails"))
    ok, msg = _first_failure(items)
    return ok, msg or f"critical counts equal Whitney numbers on {len(SUITE)} arrangements"


def check_field_validity() -> Result:
    items = []
    for name in SUITE:
        run = _run(name)
        rep = validate_field(run.field.pairs, lambda c: salvetti_boundary_cells(run.poset, c))
        items.append((rep.matching and rep.incidence and rep.acyclic, f"{name}: {rep.messages}"))
    ok, msg = _first_failure(items)
    return ok, msg or "matching, incident and free of closed V-paths everywhere"


def check_characterizations() -> Result:
    items = []
    for name in SUITE:
        run = _run(name)
        poset, order = run.poset, run.order
        rec, closed = recursive_field(poset, order), closed_form_field(poset, order)
        cells = build_salvetti(poset)
        matched = {c for p in rec for c in p}
        unmatched = {c for c in cells if c not in matched}
        items.append((rec == closed, f"{name}: recursive and closed-form fields differ"))
        items.append((unmatched == critical_by_neighbors(poset, order, cells), f"{name}: neighbor set differs"))
        items.append((unmatched == critical_by_slice(poset, order, cells), f"{name}: slice set differs"))
    ok, msg = _first_failure(items)
    return ok, msg or "recursive = closed form; unmatched = neighbor set = slice set"


def check_local_order() -> Result:
    items, scanned = [], 0
    for name in SUITE:
        run = _run(name)
        po, poset = run.order, run.poset
        n = run.arrangement.dim
        for f in poset.facets:
            if f.codim == n:
                continue
            scanned += 1
            lower = [g for g in poset.up[f.id] if po.less(g, f.id)]
            want = 0 if po.meets(f.id) else 1
            items.append((len(lower) == want, f"{name}: facet {f.id} has {len(lower)} lower facets, want {want}"))
    ok, msg = _first_failure(items)
    return ok, msg or f"{scanned} facets scanned"


def check_boundary_algebra() -> Result:
    items = []
    for name in SUITE:
        run = _run(name)
        full, red = run.complex("full"), run.complex("reduced")
        b = _whitney(run)
        res = homology(full.matrices, run.field.critical_counts())
        items.append((full.d_squared_zero(), f"{name}: d o d != 0"))
        items.append((full.matrices == red.matrices, f"{name}: full and Seq0 matrices differ"))
        items.append((full.vanishes_at_one(), f"{name}: matrices do not vanish at t = 1"))
        items.append((res.ranks == b and not any(res.torsion), f"{name}: integral homology {res.ranks} {res.torsion}"))
    ok, msg = _first_failure(items)
    return ok, msg or "d^2 = 0, full = reduced, zero at t = 1, integral ranks = Whitney"


def _bounding_c0(run: Run) -> List[int]:
    base = run.order.order[0]
    return sorted({h for g in run.poset.up[base] if run.poset.facets[g].codim == 1
                   for h in run.poset.facets[g].zero_set})


def check_local_systems() -> Result:
    items = []
    r1 = _run("two_points")
    ranks = homology(r1.complex().matrices, r1.field.critical_counts(), [Fraction(2), Fraction(3)]).ranks
    items.append((ranks == [0, 1], f"two_points at (2,3): {ranks}"))
    rng = random.Random(2024)
    for name in SUITE:
        run = _run(name)
        mc, sizes, b = run.complex(), run.field.critical_counts(), _whitney(run)
        chi = sum((-1) ** k * x for k, x in enumerate(b))
        for _ in range(3):
            vals = [Fraction(rng.choice([-7, -3, -2, 2, 3, 5]), rng.choice([1, 2, 3, 4])) for _ in range(mc.nvars)]
            res = homology(mc.matrices, sizes, vals)
            items.append((res.euler == chi, f"{name}: Euler {res.euler} != {chi}"))
            items.append((res.ranks[0] == 0, f"{name}: H_0 != 0 at {vals}"))
        for h in _bounding_c0(run):
            vals = [Fraction(2) if i == h else Fraction(1) for i in range(mc.nvars)]
            res = homology(mc.matrices, sizes, vals)
            items.append((res.ranks[0] == 0, f"{name}: H_0 != 0 with only t_{h + 1} = 2"))
            items.append((res.euler == chi, f"{name}: Euler changed with only t_{h + 1} = 2"))
    ok, msg = _first_failure(items)
    return ok, msg or "R^1 at (2,3) gives (0,1); Euler and H_0 checks hold"


def check_crossing_counts() -> Result:
    lines, ok = [], True
    for name in ("a2", "a3"):
        run = _run(name)
        mf = run.field
        g = Galleries(mf)
        total = lemma_bad = big = 0
        for k in range(1, len(mf.critical)):
            for src in mf.critical[k]:
                for seqs in admissible_sequences(mf, src).values():
                    for s in seqs:
                        cv = crossing_counts(g, s)
                        total += 1
                        lemma_bad += bool(mu_lemma_check(mf, s, cv))
                        big += any(e not in (0, 1) for e in cv.exponents())
        ok = ok and lemma_bad == 0 and big == 0
        lines.append(f"{name}: {total} sequences, {lemma_bad} violate the mu cases, {big} have m > 1")
    return ok, "; ".join(lines)


def check_braid() -> Result:
    items = []
    for n in range(1, 6):
        for k in range(n + 1):
            want = int(stirling(n + 1, n + 1 - k))
            got = len(br.build_pi_k(n, k))
            items.append((got == want, f"|pi_{k}(A_{n})| = {got}, want {want}"))
    for n in range(1, 6):
        bc = br.braid_complex(n)
        mf = polar_gradient(bc.poset, br.braid_order(bc))
        want = [int(stirling(n + 1, n + 1 - k, kind=1, signed=False)) for k in range(n + 1)]
        items.append((mf.critical_counts() == want, f"A_{n}: critical {mf.critical_counts()} vs {want}"))
        if n <= 4:
            bad = [c for c in build_salvetti(bc.poset) if bc.tableau_to_cell(bc.cell_to_tableau(c)) != c]
            items.append((not bad, f"A_{n}: round trip fails on {len(bad)} cells"))
        if n <= 3:
            mc = boundary_matrix(mf)
            geo = Run(bc.essential.arrangement)
            for spec in ("integral", [Fraction(2)] * mc.nvars, [Fraction(-1)] * mc.nvars):
                a = homology(mc.matrices, mf.critical_counts(), spec).ranks
                b = homology(geo.complex().matrices, geo.field.critical_counts(), spec).ranks
                items.append((a == b, f"A_{n}: braid homology {a} vs geometric {b} at {spec}"))
    ok, msg = _first_failure(items)
    return ok, msg or "Stirling counts n <= 5, round trip n <= 4, homology n <= 3"


def _signature(run: Run) -> tuple:
    mc, sizes = run.complex(), run.field.critical_counts()
    specs = ["integral", [Fraction(2)] * mc.nvars,
             [Fraction(-1) if i % 2 else Fraction(3, 2) for i in range(mc.nvars)]]
    return tuple(sizes), tuple(tuple(homology(mc.matrices, sizes, s).ranks) for s in specs)


def check_frame_independence() -> Result:
    items = []
    for name in SUITE:
        a, b = _signature(_run(name, 0)), _signature(_run(name, 1))
        items.append((a == b, f"{name}: seed 0 {a} vs seed 1 {b}"))
    ok, msg = _first_failure(items)
    return ok, msg or "seeds 0 and 1 agree on counts and homology"


CRITERIA: List[Tuple[int, str, Callable[[], Result]]] = [
    (1, "minimality counts", check_minimality),
    (2, "field validity", check_field_validity),
    (3, "characterization equivalence", check_characterizations),
    (4, "local ordering audit", check_local_order),
    (5, "boundary algebra", check_boundary_algebra),
    (6, "local-system sanity", check_local_systems),
    (7, "crossing-count audit", check_crossing_counts),
    (8, "braid calculus", check_braid),
    (9, "frame independence", check_frame_independence),
]


def _line(num: int, title: str, result: Result) -> str:
    ok, detail = result
    return f"criterion {num} ({title}): {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("num,title,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, check, criterion_log):
    result = check()
    line = _line(num, title, result)
    print(line)
    criterion_log.append((num, line))
    assert result[0], line


if __name__ == "__main__":
    for num, title, check in CRITERIA:
        print(_line(num, title, check()), flush=True)
