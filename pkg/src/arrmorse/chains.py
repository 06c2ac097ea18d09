"""Independent route: the full Salvetti chain complex with abelian local
coefficients, and algebraic Morse reduction of it along a matching.

Cell orientations are metric-free. For a codim-j facet G pick j independent
normals of hyperplanes through G; q_G(v) is the vector of their values on v.
The dual cell of G is oriented by q_G(e_1), ..., q_G(e_j) and a face F of G
sits in the direction w = witness(F) - witness(G), so

    [G : F] = sign det[q_G(w), q_G(e_1..e_{j-1})] * sign det[q_G(e_1..e_j)].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import det, dot, rank, sign
from .laurent import Laurent, Matrix, is_zero_matrix, matmul, zeros
from .polar import PolarOrder
from .salvetti import Cell, MorseField, build_salvetti


class ChainError(AssertionError):
    pass


def _basis_normals(normals, idx) -> List[int]:
    chosen: List[int] = []
    for i in sorted(idx):
        if rank([normals[c] for c in chosen] + [normals[i]]) > len(chosen):
            chosen.append(i)
    return chosen


@dataclass
class SalvettiComplex:
    order: PolarOrder
    cells: List[List[Cell]]
    boundary: Dict[Cell, Dict[Cell, Laurent]]
    nvars: int

    def matrix(self, k: int) -> Matrix:
        rows, cols = self.cells[k - 1], self.cells[k]
        ri = {c: i for i, c in enumerate(rows)}
        m = zeros(len(rows), len(cols), self.nvars)
        for j, c in enumerate(cols):
            for b, v in self.boundary[c].items():
                m[ri[b]][j] = v
        return m

    def d_squared_zero(self) -> bool:
        n = len(self.cells) - 1
        return all(
            is_zero_matrix(matmul(self.matrix(k - 1), self.matrix(k), self.nvars))
            for k in range(2, n + 1)
        )


def salvetti_complex(order: PolarOrder) -> SalvettiComplex:
    poset = order.poset
    arr = poset.arrangement
    n = arr.dim
    ay = order.frame.apply(arr)
    normals = [h.normal for h in ay.hyperplanes]
    wit = {f.id: order.frame.to_frame(f.witness) for f in poset.facets}
    nvars = len(normals)
    base = order.order[0]
    incidence: Dict[Tuple[int, int], int] = {}
    for g in poset.facets:
        j = g.codim
        if j == 0:
            continue
        rows = [normals[i] for i in _basis_normals(normals, g.zero_set)]
        q = lambda v: [dot(r, v) for r in rows]
        e = [tuple(Fraction(int(a == b)) for a in range(n)) for b in range(n)]
        qe = [q(e[c]) for c in range(j)]
        orient = sign(det([[col[r] for col in qe] for r in range(j)]))
        if orient == 0:
            raise ChainError(f"V_{j} is not transversal to the flat of facet {g.id}")
        for f in poset.down[g.id]:
            w = [a - b for a, b in zip(wit[f], wit[g.id])]
            cols = [q(w)] + qe[: j - 1]
            s = sign(det([[col[r] for col in cols] for r in range(j)]))
            if s == 0:
                raise ChainError("degenerate face direction")
            incidence[(g.id, f)] = s * orient
    cells_all = build_salvetti(poset)
    cells: List[List[Cell]] = [[] for _ in range(n + 1)]
    for c in cells_all:
        cells[poset.facets[c[1]].codim].append(c)
    boundary: Dict[Cell, Dict[Cell, Laurent]] = {}
    for d, g in cells_all:
        out: Dict[Cell, Laurent] = {}
        for f in poset.down[g]:
            c = poset.compose(d, f)
            away = poset.separating(d, c) - poset.separating(base, d)
            exps = [1 if h in away else 0 for h in range(nvars)]
            out[(c, f)] = Laurent.monomial(exps, incidence[(g, f)])
        boundary[(d, g)] = out
    return SalvettiComplex(order, cells, boundary, nvars)


def _unit_inverse(x: Laurent) -> Laurent:
    terms = x.terms
    if len(terms) != 1:
        raise ChainError(f"matched incidence {x} is not a unit")
    (e, c), = terms.items()
    if c not in (1, -1):
        raise ChainError(f"matched incidence {x} is not a unit")
    return Laurent.monomial([-a for a in e], c)


def morse_reduce(cx: SalvettiComplex, mf: MorseField) -> Dict[int, Matrix]:
    """Morse differential between critical cells by explicit elimination of matched pairs."""
    up = {a: b for a, b in mf.pairs}
    down = {b for _, b in mf.pairs}
    # topological order of lower cells along V-paths
    succ = {a: [x for x in cx.boundary[b] if x != a and x in up] for a, b in up.items()}
    indeg = {a: 0 for a in succ}
    for ws in succ.values():
        for w in ws:
            indeg[w] += 1
    topo, stack = [], [a for a, d in indeg.items() if d == 0]
    while stack:
        v = stack.pop()
        topo.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    rank_of = {c: i for i, c in enumerate(topo)}
    n = len(cx.cells) - 1
    out: Dict[int, Matrix] = {}
    for k in range(1, n + 1):
        rows, cols = mf.critical[k - 1], mf.critical[k]
        ri = {c: i for i, c in enumerate(rows)}
        m = zeros(len(rows), len(cols), cx.nvars)
        for j, sigma in enumerate(cols):
            vec: Dict[Cell, Laurent] = dict(cx.boundary[sigma])
            pending = sorted((c for c in vec if c in up), key=rank_of.__getitem__)
            done = set()
            while pending:
                tau = pending.pop(0)
                if tau in done:
                    continue
                done.add(tau)
                a = vec.pop(tau, None)
                if a is None or a.is_zero():
                    continue
                u = up[tau]
                factor = -(a * _unit_inverse(cx.boundary[u][tau]))
                for x, v in cx.boundary[u].items():
                    if x == tau:
                        continue
                    vec[x] = vec.get(x, Laurent.zero(cx.nvars)) + factor * v
                    if x in up and x not in done:
                        pending.append(x)
                pending.sort(key=rank_of.__getitem__)
            for c, v in vec.items():
                if c in ri:
                    m[ri[c]][j] = m[ri[c]][j] + v
                elif c not in down and c not in up and not v.is_zero():
                    raise ChainError(f"reduction left a non-critical cell {c}")
        out[k] = m
    return out


def sign_equivalent(a: Dict[int, Matrix], b: Dict[int, Matrix], sizes: Sequence[int]) -> Optional[List[List[int]]]:
    """Find signs delta with a_k[i][j] = delta_{k-1}[i] delta_k[j] b_k[i][j]; None if impossible."""
    n = len(sizes) - 1
    delta: List[List[Optional[int]]] = [[None] * s for s in sizes]
    nodes = [(k, i) for k in range(n + 1) for i in range(sizes[k])]
    edges: Dict[Tuple[int, int], List[Tuple[Tuple[int, int], int]]] = {v: [] for v in nodes}
    for k in range(1, n + 1):
        for i, row in enumerate(a[k]):
            for j, x in enumerate(row):
                y = b[k][i][j]
                if x.is_zero() and y.is_zero():
                    continue
                if x == y:
                    rel = 1
                elif x == -y:
                    rel = -1
                else:
                    return None
                edges[(k - 1, i)].append(((k, j), rel))
                edges[(k, j)].append(((k - 1, i), rel))
    for v in nodes:
        if delta[v[0]][v[1]] is not None:
            continue
        delta[v[0]][v[1]] = 1
        stack = [v]
        while stack:
            x = stack.pop()
            for y, rel in edges[x]:
                want = delta[x[0]][x[1]] * rel
                cur = delta[y[0]][y[1]]
                if cur is None:
                    delta[y[0]][y[1]] = want
                    stack.append(y)
                elif cur != want:
                    return None
    return [[d or 1 for d in row] for row in delta]
