"""End-to-end runs with their consistency checks; every report is a JSON-ready dict."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sympy.functions.combinatorial.numbers import stirling

from . import braid as br
from .chains import morse_reduce, salvetti_complex, sign_equivalent
from .faces import FacePoset, face_poset
from .geometry import Arrangement, ArrangementError, Essentialization, essentialize
from .homology import HomologyResult, homology, parse_spec
from .lattice import build_lattice, whitney_numbers
from .morse import MorseComplex, boundary_matrix, gallery_word, Galleries
from .polar import PolarOrder, polar_order_all
from .salvetti import MorseField, check_local_criticality, opposite_chamber_bijection, polar_gradient


class PipelineCheckError(AssertionError):
    """An internal consistency check failed."""


def require(cond: bool, message: str) -> None:
    if not cond:
        raise PipelineCheckError(message)


@dataclass
class Prepared:
    arrangement: Arrangement
    essentialization: Optional[Essentialization] = None

    def to_json(self) -> dict:
        out = {"dim": self.arrangement.dim, "hyperplanes": len(self.arrangement.hyperplanes)}
        if self.essentialization is not None:
            out["projection"] = [[str(c) for c in b] for b in self.essentialization.basis]
        return out


def prepare(arr: Arrangement, essential: bool = False) -> Prepared:
    """Essentialize on request; otherwise non-essential input is rejected."""
    if arr.is_essential:
        return Prepared(arr)
    if not essential:
        raise ArrangementError("arrangement is not essential; rerun with --essentialize")
    ess = essentialize(arr)
    return Prepared(ess.arrangement, ess)


@dataclass
class Run:
    """Cached stages of one arrangement at one seed."""
    arrangement: Arrangement
    seed: int = 0
    _poset: Optional[FacePoset] = None
    _order: Optional[PolarOrder] = None
    _field: Optional[MorseField] = None
    _complex: Dict[str, MorseComplex] = field(default_factory=dict)

    @property
    def poset(self) -> FacePoset:
        if self._poset is None:
            self._poset = face_poset(self.arrangement, self.seed)
        return self._poset

    @property
    def order(self) -> PolarOrder:
        if self._order is None:
            self._order = polar_order_all(self.poset, self.seed)
        return self._order

    @property
    def field(self) -> MorseField:
        if self._field is None:
            self._field = polar_gradient(self.poset, self.order)
        return self._field

    def complex(self, mode: str = "full") -> MorseComplex:
        if mode not in self._complex:
            self._complex[mode] = boundary_matrix(self.field, mode)
        return self._complex[mode]


def faces_report(run: Run) -> dict:
    poset = run.poset
    counts = poset.counts()
    whitney = whitney_numbers(build_lattice(run.arrangement))
    zaslavsky = sum(whitney) == len(poset.chambers)
    require(zaslavsky, f"{len(poset.chambers)} chambers but the Whitney numbers sum to {sum(whitney)}")
    return {"facets": len(poset.facets), "counts": counts, "chambers": len(poset.chambers),
            "whitney": whitney, "zaslavsky": zaslavsky}


def order_report(run: Run) -> dict:
    po = run.order
    fs = run.poset.facets
    out = po.to_json()
    out["attempts"] = po.frame.attempts if po.frame is not None else 0
    out["slice_points"] = {str(f): [str(c) for c in p] for f, p in sorted(po.slice_points.items())}
    out["roots"] = [[f for f in po.order if fs[f].codim == k and po.meets(f)]
                    for k in range(run.arrangement.dim + 1)]
    return out


def _field_checks(run: Run, whitney: Sequence[int]) -> dict:
    mf = run.field
    require(mf.critical_counts() == list(whitney),
            f"critical counts {mf.critical_counts()} differ from the Whitney numbers {list(whitney)}")
    require(check_local_criticality(mf), "local criticality disagrees with the field")
    opposite_chamber_bijection(mf)
    return {"critical_counts_match_whitney": True, "local_criticality": True, "opposite_chambers": True}


def morse_report(run: Run) -> dict:
    mf = run.field
    whitney = whitney_numbers(build_lattice(run.arrangement))
    out = mf.to_json()
    out["whitney"] = whitney
    out["checks"] = _field_checks(run, whitney)
    return out


def _spec_values(spec: Optional[str], nvars: int):
    if spec is None or spec == "integral":
        return "integral"
    return parse_spec(spec, nvars)


def homology_report(run: Run, mode: str = "full", spec: Optional[str] = None,
                    cross_check: bool = True, words: bool = False) -> dict:
    mc = run.complex(mode)
    sizes = run.field.critical_counts()
    require(mc.d_squared_zero(), "d o d is not zero")
    require(mc.vanishes_at_one(), "matrices do not vanish at t = 1")
    checks = {"d_squared_zero": True, "vanishes_at_one": True}
    if cross_check:
        other = run.complex("reduced" if mode == "full" else "full")
        require(other.matrices == mc.matrices, "full and reduced matrices differ")
        cx = salvetti_complex(run.order)
        require(cx.d_squared_zero(), "full Salvetti complex fails d o d = 0")
        reduced = morse_reduce(cx, run.field)
        require(sign_equivalent(mc.matrices, reduced, sizes) is not None,
                "sequence matrices disagree with the reduction of the full complex")
        checks.update({"full_equals_reduced": True, "matches_chain_reduction": True})
    values = _spec_values(spec, mc.nvars)
    res = homology(mc.matrices, sizes, values)
    whitney = whitney_numbers(build_lattice(run.arrangement))
    require(res.euler == sum((-1) ** k * b for k, b in enumerate(whitney)), "Euler characteristic changed")
    if values == "integral":
        require(res.ranks == whitney and not any(res.torsion), "integral homology is not the Whitney vector")
    out = mc.to_json()
    out["text"] = {str(k): [[str(x) for x in row] for row in m] for k, m in mc.matrices.items()}
    out["critical_counts"] = sizes
    out["homology"] = res.to_json()
    out["checks"] = checks
    out["audit"] = dict(mc.audit)
    if words:
        g = Galleries(run.field)
        out["gallery_words"] = {
            str(k): {f"{i},{j}": [[[h, e] for h, e in gallery_word(g, s)] for s in data.sequences]
                     for (i, j), data in sorted(ents.items())}
            for k, ents in mc.entries.items()
        }
    return out


def braid_report(n: int, k: Optional[int] = None, homology_spec: Optional[str] = None) -> dict:
    ks = range(n + 1) if k is None else [k]
    pis = {kk: br.build_pi_k(n, kk) for kk in ks}
    out: dict = {"n": n, "pi": {}}
    for kk, pi in pis.items():
        want = int(stirling(n + 1, n + 1 - kk))
        require(len(pi) == want, f"|pi_{kk}(A_{n})| = {len(pi)}, expected {want}")
        out["pi"][str(kk)] = {"count": len(pi), "stirling2": want,
                              "tableaux": [t.to_json() for t in pi.tableaux],
                              "pairs": [[list(p) for p in ps] for ps in pi.pairs]}
    bc = br.braid_complex(n)
    po = br.braid_order(bc)
    mf = polar_gradient(bc.poset, po)
    counts = mf.critical_counts()
    want1 = [int(stirling(n + 1, n + 1 - j, kind=1, signed=False)) for j in range(n + 1)]
    require(counts == want1, f"braid critical counts {counts} differ from {want1}")
    crit = br.critical_tableaux(bc, mf.critical)
    out["critical_counts"] = counts
    out["stirling1"] = want1
    out["critical"] = {str(j): [t.to_json() for t in crit[j]] for j in ks}
    if homology_spec is not None:
        mc = boundary_matrix(mf)
        require(mc.d_squared_zero(), "d o d is not zero")
        out["homology"] = homology(mc.matrices, counts, _spec_values(homology_spec, mc.nvars)).to_json()
    return out
