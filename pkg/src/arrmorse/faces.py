"""Facets of a real arrangement as sign vectors, with witnesses and the face order.

Enumeration is exact and LP-free: every facet touches a vertex in its closure
(the arrangement is essential), and near a vertex v the facets are s_v o sigma
for sigma a covector of the central arrangement of hyperplanes through v.
Central covectors are in turn read off an affine section {g . d = 1}.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .geometry import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    Vector,
    dot,
    nullspace,
    rank,
    sign,
)
from .lattice import build_lattice

Signs = Tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    id: int
    signs: Signs
    witness: Vector
    codim: int

    @property
    def zero_set(self) -> frozenset:
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)


def face_leq(f: Signs, g: Signs) -> bool:
    """F <= G in the face order: G lies in the closure of F."""
    return all(b == 0 or b == a for a, b in zip(f, g))


def compose(c: Signs, f: Signs) -> Signs:
    """The chamber F.C: signs of F where nonzero, else those of C."""
    return tuple(b if b != 0 else a for a, b in zip(c, f))


def _line_directions(normals: Sequence[Vector], n: int) -> List[Vector]:
    """Directions of the one-dimensional flats of a central arrangement."""
    out = []
    seen = set()
    for sub in combinations(range(len(normals)), n - 1):
        rows = [normals[i] for i in sub]
        if rank(rows) != n - 1:
            continue
        d = nullspace(rows, n)[0]
        lead = next(c for c in d if c != 0)
        key = tuple(c / lead for c in d)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


def central_covectors(normals: Sequence[Vector], n: int, rng: random.Random) -> Dict[Signs, Vector]:
    """Covectors of an essential central arrangement, each with a direction witness."""
    zero = tuple(Fraction(0) for _ in range(n))
    out: Dict[Signs, Vector] = {tuple(0 for _ in normals): zero}
    if n == 1:
        for d in (Fraction(1), Fraction(-1)):
            out[tuple(sign(a[0] * d) for a in normals)] = (d,)
        return out
    lines = _line_directions(normals, n)
    for _ in range(200):
        g = tuple(Fraction(rng.randint(-50, 50)) for _ in range(n))
        if all(c == 0 for c in g):
            continue
        if any(dot(g, a) == 0 and rank([g, a]) == 1 for a in normals):
            continue
        if any(dot(g, d) == 0 for d in lines):
            continue
        basis = nullspace([g], n)
        d0 = tuple(c / dot(g, g) for c in g)
        hs = []
        ok = True
        for a in normals:
            nb = tuple(dot(a, b) for b in basis)
            if all(c == 0 for c in nb):
                ok = False
                break
            hs.append(Hyperplane(nb, -dot(a, d0)))
        if not ok:
            continue
        try:
            section = Arrangement(tuple(hs), n - 1)
        except ArrangementError:
            continue
        for fs, y in affine_facets(section, rng).items():
            d = tuple(d0[i] + sum((y[k] * basis[k][i] for k in range(n - 1)), Fraction(0))
                      for i in range(n))
            out[fs] = d
            out[tuple(-s for s in fs)] = tuple(-c for c in d)
        return out
    raise ArrangementError("could not find a generic section direction")


def affine_facets(arr: Arrangement, rng: Optional[random.Random] = None) -> Dict[Signs, Vector]:
    """All facets of an essential affine arrangement, sign vector -> interior point."""
    rng = rng or random.Random(0)
    n = arr.dim
    if not arr.hyperplanes:
        return {(): tuple(Fraction(0) for _ in range(n))}
    if not arr.is_essential:
        raise ArrangementError("facet enumeration needs an essential arrangement")
    lat = build_lattice(arr)
    out: Dict[Signs, Vector] = {}
    for flat in lat.of_rank(n):
        v = flat.support.point
        local = sorted(flat.defining_set)
        vals = [h.value(v) for h in arr.hyperplanes]
        cov = central_covectors([arr.hyperplanes[i].normal for i in local], n, rng)
        for sigma, d in cov.items():
            t = Fraction(1)
            for h, val in zip(arr.hyperplanes, vals):
                ad = dot(h.normal, d)
                if val != 0 and ad != 0:
                    t = min(t, abs(val) / (2 * abs(ad)))
            full = [sign(x) for x in vals]
            for i, s in zip(local, sigma):
                full[i] = s
            key = tuple(full)
            if key not in out:
                out[key] = tuple(x + t * y for x, y in zip(v, d))
    return out


@dataclass
class FacePoset:
    """Facets sorted by (codim, sign vector), with covering relations."""

    arrangement: Arrangement
    facets: List[Facet]
    by_signs: Dict[Signs, int] = field(default_factory=dict)
    up: List[List[int]] = field(default_factory=list)
    down: List[List[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.facets)

    @property
    def chambers(self) -> List[int]:
        return [f.id for f in self.facets if f.codim == 0]

    def of_codim(self, k: int) -> List[int]:
        return [f.id for f in self.facets if f.codim == k]

    def counts(self) -> List[int]:
        c = [0] * (self.arrangement.dim + 1)
        for f in self.facets:
            c[f.codim] += 1
        return c

    def leq(self, a: int, b: int) -> bool:
        return face_leq(self.facets[a].signs, self.facets[b].signs)

    def compose(self, c: int, f: int) -> int:
        return self.by_signs[compose(self.facets[c].signs, self.facets[f].signs)]

    def chambers_of(self, f: int) -> List[int]:
        return [c for c in self.chambers if self.leq(c, f)]

    def separating(self, c: int, d: int) -> frozenset:
        a, b = self.facets[c].signs, self.facets[d].signs
        return frozenset(i for i, (x, y) in enumerate(zip(a, b)) if x * y < 0)

    def below(self, g: int) -> List[int]:
        """All F with F <= G, G excluded."""
        sg = self.facets[g].signs
        return [f.id for f in self.facets if f.id != g and face_leq(f.signs, sg)]

    def to_json(self) -> dict:
        return {
            "dim": self.arrangement.dim,
            "counts": self.counts(),
            "facets": [
                {"id": f.id, "codim": f.codim, "signs": list(f.signs),
                 "witness": [str(x) for x in f.witness]}
                for f in self.facets
            ],
            "covers": [[a, b] for a in range(len(self.facets)) for b in self.up[a]],
        }

    def to_dot(self) -> str:
        lines = ["digraph faces {", "  rankdir=BT;"]
        for f in self.facets:
            lab = "".join({1: "+", -1: "-", 0: "0"}[s] for s in f.signs)
            lines.append(f'  f{f.id} [label="{f.id}: {lab}"];')
        for a, ups in enumerate(self.up):
            for b in ups:
                lines.append(f"  f{a} -> f{b};")
        lines.append("}")
        return "\n".join(lines)


def face_poset(arr: Arrangement, seed: int = 0) -> FacePoset:
    return poset_from_witnesses(arr, affine_facets(arr, random.Random(seed)))


def poset_from_witnesses(arr: Arrangement, raw: Dict[Signs, Vector]) -> FacePoset:
    """Face poset from a complete map sign vector -> witness point (witnesses re-checked)."""
    for s, w in raw.items():
        if arr.signs(w) != s:
            raise AssertionError(f"witness {w} does not realise {s}")
    normals = [h.normal for h in arr.hyperplanes]
    codim = {s: rank([normals[i] for i, x in enumerate(s) if x == 0]) for s in raw}
    keys = sorted(raw, key=lambda s: (codim[s], s))
    facets = [Facet(i, s, raw[s], codim[s]) for i, s in enumerate(keys)]
    poset = FacePoset(arr, facets, {f.signs: f.id for f in facets})
    n = arr.dim
    layers = [[f.id for f in facets if f.codim == k] for k in range(n + 1)]
    poset.up = [[] for _ in facets]
    poset.down = [[] for _ in facets]
    m = len(arr.hyperplanes)
    for k in range(n):
        lo, hi = layers[k], layers[k + 1]
        if not lo or not hi:
            continue
        a = np.array([facets[i].signs for i in lo], dtype=np.int8).reshape(len(lo), m)
        b = np.array([facets[i].signs for i in hi], dtype=np.int8).reshape(len(hi), m)
        mat = kernels.face_leq_matrix(a, b)
        for i, j in zip(*np.nonzero(mat)):
            poset.up[lo[i]].append(hi[j])
            poset.down[hi[j]].append(lo[i])
    return poset


def iter_signs(poset: FacePoset) -> Iterable[Signs]:
    return (f.signs for f in poset.facets)


def dump_json(poset: FacePoset) -> str:
    return json.dumps(poset.to_json(), indent=2)
