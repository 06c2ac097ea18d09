"""Salvetti cells [C < F], the polar gradient field and its critical cells."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .faces import FacePoset
from .polar import PolarOrder

Cell = Tuple[int, int]  # (chamber id, facet id)


class FieldError(AssertionError):
    pass


def build_salvetti(poset: FacePoset) -> List[Cell]:
    """All cells, sorted by (dim, facet, chamber)."""
    cells = []
    for f in poset.facets:
        for c in poset.chambers_of(f.id):
            cells.append((c, f.id))
    cells.sort(key=lambda cf: (poset.facets[cf[1]].codim, cf[1], cf[0]))
    return cells


def salvetti_boundary_cells(poset: FacePoset, cell: Cell, k: Optional[int] = None) -> List[Cell]:
    """Cells [D.F < F] with F < G of codim k (default: one less than the cell)."""
    d, g = cell
    j = poset.facets[g].codim
    k = j - 1 if k is None else k
    if k >= j:
        raise ValueError("boundary codimension must be below the cell dimension")
    if k < 0:
        return []
    if k == j - 1:
        faces = poset.down[g]
    else:
        faces = [f for f in poset.below(g) if poset.facets[f].codim == k]
    return [(poset.compose(d, f), f) for f in faces]


def cell_counts_by_star(poset: FacePoset) -> List[int]:
    """k-cell counts as the sum over codim-k facets of the chamber count of A_F."""
    n = poset.arrangement.dim
    chambers = [poset.facets[c].signs for c in poset.chambers]
    out = [0] * (n + 1)
    for f in poset.facets:
        zs = sorted(f.zero_set)
        out[f.codim] += len({tuple(s[i] for i in zs) for s in chambers})
    return out


@dataclass
class FieldReport:
    matching: bool = True
    incidence: bool = True
    acyclic: bool = True
    messages: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.matching and self.incidence and self.acyclic

    def to_json(self) -> dict:
        return {"matching": self.matching, "incidence": self.incidence,
                "acyclic": self.acyclic, "valid": self.valid}


def validate_field(pairs: Iterable[Tuple[object, object]], boundary: Callable[[object], Iterable[object]]) -> FieldReport:
    """Matching, incidence and absence of closed V-paths for any cell complex."""
    rep = FieldReport()
    pairs = list(pairs)
    seen: Dict[object, int] = {}
    for lo, up in pairs:
        for c in (lo, up):
            seen[c] = seen.get(c, 0) + 1
    dup = [c for c, m in seen.items() if m > 1]
    if dup:
        rep.matching = False
        rep.messages.append(f"{len(dup)} cells lie in more than one pair")
    bd = {up: list(boundary(up)) for _, up in pairs}
    for lo, up in pairs:
        if lo not in bd[up]:
            rep.incidence = False
            rep.messages.append(f"{lo} is not in the boundary of {up}")
            break
    # V-path graph on lower cells: lo -> lo' when lo' lies in the boundary of match(lo)
    up_of = {}
    for lo, up in pairs:
        up_of.setdefault(lo, up)
    succ = {lo: [b for b in bd[up] if b != lo and b in up_of] for lo, up in up_of.items()}
    indeg = {v: 0 for v in succ}
    for v, ws in succ.items():
        for w in ws:
            indeg[w] += 1
    stack = [v for v, d in indeg.items() if d == 0]
    done = 0
    while stack:
        v = stack.pop()
        done += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if done != len(succ):
        rep.acyclic = False
        rep.messages.append(f"closed V-path through {len(succ) - done} cells")
    return rep


@dataclass
class MorseField:
    poset: FacePoset
    order: PolarOrder
    cells: List[Cell]
    pairs: List[Tuple[Cell, Cell]]
    critical: List[List[Cell]]
    report: FieldReport
    match: Dict[Cell, Cell] = field(default_factory=dict)

    def dim(self, cell: Cell) -> int:
        return self.poset.facets[cell[1]].codim

    def is_critical(self, cell: Cell) -> bool:
        return cell not in self.match

    def matched_from_below(self, cell: Cell) -> bool:
        p = self.match.get(cell)
        return p is not None and self.dim(p) < self.dim(cell)

    def critical_counts(self) -> List[int]:
        return [len(c) for c in self.critical]

    def to_json(self) -> dict:
        return {
            "pairs": [[list(a), list(b)] for a, b in self.pairs],
            "critical": [[list(c) for c in cs] for cs in self.critical],
            "critical_counts": self.critical_counts(),
            "validation": self.report.to_json(),
        }

    def to_dot(self) -> str:
        lines = ["digraph salvetti {", "  rankdir=BT;"]
        for c in self.cells:
            style = ' style=filled fillcolor="gold"' if self.is_critical(c) else ""
            lines.append(f'  "{c[0]}_{c[1]}" [label="[{c[0]}<{c[1]}]"{style}];')
        paired = {(a, b) for a, b in self.pairs}
        for c in self.cells:
            for b in salvetti_boundary_cells(self.poset, c):
                attr = ' [color="red" penwidth=2]' if (b, c) in paired else ""
                lines.append(f'  "{b[0]}_{b[1]}" -> "{c[0]}_{c[1]}"{attr};')
        lines.append("}")
        return "\n".join(lines)


def _interval(poset: FacePoset, c: int, f: int) -> List[int]:
    """All F' with C <= F' < F (C included, F excluded)."""
    return [g for g in poset.below(f) if poset.leq(c, g)]


def recursive_field(poset: FacePoset, order: PolarOrder) -> List[Tuple[Cell, Cell]]:
    """Bottom-up: pair [C<F^j] with [C<F^{j+1}] when F^{j+1} precedes F^j and
    [C<F^j] is not already the top of a lower pair."""
    n = poset.arrangement.dim
    pairs: List[Tuple[Cell, Cell]] = []
    tops: Set[Cell] = set()
    for j in range(n):
        new_tops = set()
        for f in poset.of_codim(j):
            lower = [g for g in poset.up[f] if order.less(g, f)]
            if not lower:
                continue
            for c in poset.chambers_of(f):
                if (c, f) in tops:
                    continue
                for g in lower:
                    pairs.append(((c, f), (c, g)))
                    new_tops.add((c, g))
        tops = new_tops
    return sorted(pairs, key=lambda p: (poset.facets[p[1][1]].codim, p[1][1], p[1][0], p[0][1]))


def closed_form_field(poset: FacePoset, order: PolarOrder) -> List[Tuple[Cell, Cell]]:
    """Direct test of (a) F^{j+1} before F^j and (b) every F^{j-1} in [C, F^j) before F^j."""
    n = poset.arrangement.dim
    pairs = []
    for j in range(n):
        for f in poset.of_codim(j):
            lower = [g for g in poset.up[f] if order.less(g, f)]
            if not lower:
                continue
            for c in poset.chambers_of(f):
                if j > 0:
                    below = [h for h in poset.down[f] if poset.leq(c, h)]
                    if not all(order.less(h, f) for h in below):
                        continue
                for g in lower:
                    pairs.append(((c, f), (c, g)))
    return sorted(pairs, key=lambda p: (poset.facets[p[1][1]].codim, p[1][1], p[1][0], p[0][1]))


def critical_by_neighbors(poset: FacePoset, order: PolarOrder, cells: Sequence[Cell]) -> Set[Cell]:
    """F precedes every facet in its boundary and follows every face of it on C's side."""
    out = set()
    for c, f in cells:
        if any(order.less(g, f) for g in poset.up[f]):
            continue
        below = [h for h in poset.down[f] if poset.leq(c, h)]
        if all(order.less(h, f) for h in below):
            out.add((c, f))
    return out


def critical_by_slice(poset: FacePoset, order: PolarOrder, cells: Sequence[Cell]) -> Set[Cell]:
    """F meets V_k and F is the polar maximum of the interval [C, F]."""
    out = set()
    for c, f in cells:
        if not order.meets(f):
            continue
        if all(order.less(g, f) for g in _interval(poset, c, f)):
            out.add((c, f))
    return out


def locally_critical(poset: FacePoset, order: PolarOrder, cell: Cell) -> bool:
    c, f = cell
    return all(order.less(g, f) for g in _interval(poset, c, f))


def polar_gradient(poset: FacePoset, order: PolarOrder) -> MorseField:
    """The polar field, cross-checked against the closed form and the critical-cell descriptions."""
    cells = build_salvetti(poset)
    pairs = recursive_field(poset, order)
    closed = closed_form_field(poset, order)
    if pairs != closed:
        raise FieldError("recursive and closed-form fields differ")
    report = validate_field(pairs, lambda cell: salvetti_boundary_cells(poset, cell))
    if not report.valid:
        raise FieldError("; ".join(report.messages))
    match: Dict[Cell, Cell] = {}
    for a, b in pairs:
        match[a] = b
        match[b] = a
    unmatched = {c for c in cells if c not in match}
    if unmatched != critical_by_neighbors(poset, order, cells):
        raise FieldError("unmatched cells differ from the neighbor description")
    if unmatched != critical_by_slice(poset, order, cells):
        raise FieldError("unmatched cells differ from the slice description")
    n = poset.arrangement.dim
    critical = [[] for _ in range(n + 1)]
    for c in cells:
        if c in unmatched:
            critical[poset.facets[c[1]].codim].append(c)
    return MorseField(poset, order, cells, pairs, critical, report, match)


def check_local_criticality(mf: MorseField) -> bool:
    """A cell is the top of a pair exactly when it is not locally critical."""
    for cell in mf.cells:
        if mf.dim(cell) == 0:
            continue
        if mf.matched_from_below(cell) == locally_critical(mf.poset, mf.order, cell):
            return False
    return True


def opposite_chamber(poset: FacePoset, c: int, f: int) -> int:
    """The chamber opposite to C across the flat of F."""
    zs = poset.facets[f].zero_set
    s = poset.facets[c].signs
    return poset.by_signs[tuple(-x if i in zs else x for i, x in enumerate(s))]


def opposite_chamber_bijection(mf: MorseField) -> Dict[Cell, int]:
    """Critical k-cell -> chamber meeting V_k but not V_{k-1}; raises unless bijective."""
    poset, order = mf.poset, mf.order
    out: Dict[Cell, int] = {}
    for k, cs in enumerate(mf.critical):
        target = {c for c in poset.chambers if order.meets(c, k)
                  and (k == 0 or not order.meets(c, k - 1))}
        image = [opposite_chamber(poset, c, f) for c, f in cs]
        if len(set(image)) != len(image) or set(image) != target:
            raise FieldError(f"opposite-chamber map is not a bijection in dimension {k}")
        out.update(zip(cs, image))
    return out
