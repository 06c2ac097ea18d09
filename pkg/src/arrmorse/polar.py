"""Generic polar frames, exact angle keys and the polar total order on facets.

Coordinates: a frame is an affine change of variables x = N y + t. All work
happens in y, where the flag is V_j = span(e_1..e_j). Angles are never
evaluated; theta_j is replaced by the signed squared cosine

    y_j |y_j| / (y_j^2 + ... + y_n^2),

which is strictly decreasing in theta_j on [0, pi]. Comparison of two points is
anti-lexicographic (theta_{n-1} first, rho last).

The order itself is assembled as a forest (see ``polar_forest``): codim-k facets
meeting V_k are roots, ordered inside their slice; every other codim-k facet
hangs below its minimal codim-(k+1) boundary facet, siblings in reverse order
of their slice representatives. Preorder of the forest is the polar order.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .faces import FacePoset, Signs, affine_facets
from .geometry import Arrangement, ArrangementError, Hyperplane, Vector, det, dot, inverse, matvec, transpose
from .lattice import AffineSubspace, IntersectionLattice, build_lattice, transversal

MAX_ATTEMPTS = 64


class GenericityError(RuntimeError):
    """No verified frame was found within the attempt budget."""


@dataclass(frozen=True)
class PolarKey:
    rho2: Fraction
    angles: Tuple[Fraction, ...]  # signed cos^2 of theta_1 .. theta_{n-1}

    @property
    def sort_key(self):
        return (tuple(-a for a in reversed(self.angles)), self.rho2)

    def __lt__(self, other: "PolarKey") -> bool:
        return self.sort_key < other.sort_key


def theta_key(y: Sequence[Fraction]) -> PolarKey:
    n = len(y)
    tails = [Fraction(0)] * (n + 1)
    for j in range(n - 1, -1, -1):
        tails[j] = tails[j + 1] + y[j] * y[j]
    angles = []
    for j in range(n - 1):
        angles.append(Fraction(1) if tails[j] == 0 else y[j] * abs(y[j]) / tails[j])
    return PolarKey(tails[0], tuple(angles))


@dataclass(frozen=True)
class GenericFrame:
    matrix: Tuple[Vector, ...]  # N, x = N y + t
    translation: Vector
    seed: int
    scale: Fraction = Fraction(1)
    attempts: int = 1

    @classmethod
    def identity(cls, n: int) -> "GenericFrame":
        eye = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return cls(eye, tuple(Fraction(0) for _ in range(n)), 0)

    def apply(self, arr: Arrangement) -> Arrangement:
        nt = transpose(self.matrix) if self.matrix else []
        hs = tuple(
            Hyperplane(matvec(nt, h.normal), h.offset - dot(h.normal, self.translation))
            for h in arr.hyperplanes
        )
        return Arrangement(hs, arr.dim)

    def to_frame(self, x: Sequence[Fraction]) -> Vector:
        inv = inverse(self.matrix)
        return matvec(inv, [a - b for a, b in zip(x, self.translation)])

    def to_json(self) -> dict:
        return {
            "matrix": [[str(c) for c in r] for r in self.matrix],
            "translation": [str(c) for c in self.translation],
            "seed": self.seed,
            "scale": str(self.scale),
            "attempts": self.attempts,
        }


@dataclass
class FrameReport:
    origin_in_chamber: bool = True
    cone: bool = True
    transversal: bool = True
    no_tie: bool = True
    messages: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.origin_in_chamber and self.cone and self.transversal and self.no_tie

    def first_failure(self) -> str:
        return self.messages[0] if self.messages else "ok"

    def to_json(self) -> dict:
        return {
            "origin_in_chamber": self.origin_in_chamber,
            "cone": self.cone,
            "transversal": self.transversal,
            "no_tie": self.no_tie,
            "passed": self.passed,
        }


def restrict(arr: Arrangement, j: int) -> Arrangement:
    """A cut down to V_j, written in the coordinates y_1..y_j (hyperplane order kept)."""
    hs = tuple(Hyperplane(h.normal[:j], h.offset) for h in arr.hyperplanes)
    return Arrangement(hs, j)


def slice_vertices(arr: Arrangement, lat: IntersectionLattice, k: int) -> Dict[FrozenSet[int], Optional[Vector]]:
    """For every rank-k flat L, the point L meet V_k (None if the meet is not a point)."""
    n = arr.dim
    vk = AffineSubspace.coordinate(k, n)
    out = {}
    for flat in lat.of_rank(k):
        meet = flat.support.intersect(vk)
        out[flat.defining_set] = meet.point if meet is not None and meet.dim == 0 else None
    return out


def verify_frame(arr: Arrangement, frame: GenericFrame, lat: Optional[IntersectionLattice] = None) -> FrameReport:
    """Check a frame against the genericity conditions, in frame coordinates."""
    rep = FrameReport()
    try:
        ay = frame.apply(arr)
    except ArrangementError as exc:
        rep.transversal = False
        rep.messages.append(f"transform: {exc}")
        return rep
    n = ay.dim
    origin = tuple(Fraction(0) for _ in range(n))
    if any(s == 0 for s in ay.signs(origin)):
        rep.origin_in_chamber = False
        rep.messages.append("origin lies on a hyperplane")
    lat = lat or build_lattice(ay)
    subspaces = [AffineSubspace.coordinate(i, n) for i in range(n + 1)]
    for flat in lat.flats:
        for i in range(1, n + 1):
            if not transversal(flat, subspaces[i]):
                rep.transversal = False
                rep.messages.append(f"V_{i} not transversal to flat {sorted(flat.defining_set)}")
                return rep
    for k in range(1, n + 1):
        leading = set()
        for ds, p in slice_vertices(ay, lat, k).items():
            if p is None:
                rep.transversal = False
                rep.messages.append(f"flat {sorted(ds)} does not meet V_{k} in a point")
                return rep
            if any(p[j] <= 0 for j in range(k)):
                rep.cone = False
                rep.messages.append(f"slice {k} vertex {p} not in the positive orthant")
                return rep
            for j in range(k - 1):
                if p[j] * p[j] <= sum((p[m] * p[m] for m in range(j + 1, k)), Fraction(0)):
                    rep.cone = False
                    rep.messages.append(f"slice {k} vertex outside the cone")
                    return rep
            zeros = frozenset(i for i, s in enumerate(ay.signs(p)) if s == 0)
            if zeros != ds:
                rep.transversal = False
                rep.messages.append(f"slice {k} vertex lies on extra hyperplanes")
                return rep
            # theta_{k-1} (or rho for k = 1) must separate the vertices of one slice
            lead = theta_key(p[:k])
            tag = lead.angles[-1] if lead.angles else lead.rho2
            if tag in leading:
                rep.no_tie = False
                rep.messages.append(f"tie among slice {k} vertices")
                return rep
            leading.add(tag)
    return rep


def _random_matrix(rng: random.Random, n: int) -> Tuple[Vector, ...]:
    while True:
        m = tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(n))
        if det(m) != 0:
            return m


def _candidate(arr: Arrangement, lat: IntersectionLattice, rng: random.Random, n_mat, scale: Fraction, seed: int, attempt: int) -> GenericFrame:
    n = arr.dim
    verts = [f.support.point for f in lat.of_rank(n)]
    center = tuple(sum((v[i] for v in verts), Fraction(0)) / len(verts) for i in range(n))
    # a small rational jitter keeps the origin off the hyperplanes through the centroid line
    c = tuple(scale ** (n - j) + Fraction(rng.randint(1, 97), 101) for j in range(n))
    shift = matvec(n_mat, c)
    t = tuple(a - b for a, b in zip(center, shift))
    return GenericFrame(n_mat, t, seed, scale, attempt)


def sample_frame(arr: Arrangement, seed: int = 0, max_attempts: int = MAX_ATTEMPTS,
                 accept: Optional[Callable[[GenericFrame], Optional[str]]] = None) -> GenericFrame:
    """Draw frames until one verifies (and ``accept`` returns None); deterministic in seed."""
    if not arr.is_essential:
        raise ArrangementError("a generic frame needs an essential arrangement")
    n = arr.dim
    lat = build_lattice(arr)
    rng = random.Random(seed)
    n_mat = _random_matrix(rng, n)
    verts = [f.support.point for f in lat.of_rank(n)]
    spread = max((abs(c) for v in verts for c in v), default=Fraction(1))
    scale = Fraction(4) * (1 + spread)
    last = "no attempt made"
    for attempt in range(1, max_attempts + 1):
        frame = _candidate(arr, lat, rng, n_mat, scale, seed, attempt)
        report = verify_frame(arr, frame)
        last = report.first_failure()
        if report.passed:
            why = accept(frame) if accept else None
            if why is None:
                return frame
            last = why
        if not report.transversal or not report.origin_in_chamber or attempt % 4 == 0:
            # a bad flag direction is not cured by stretching
            n_mat = _random_matrix(rng, n)
        else:
            scale *= 2
    raise GenericityError(f"no generic frame after {max_attempts} attempts; last failure: {last}")


def polar_forest(
    levels: Sequence[Sequence[Hashable]],
    roots: Sequence[Sequence[Hashable]],
    ups: Callable[[Hashable], Sequence[Hashable]],
    representative: Callable[[Hashable], Hashable],
) -> Tuple[List[Hashable], Dict[Hashable, Hashable]]:
    """Polar order from slice data alone.

    levels[k]: all codim-k facets; roots[k]: the codim-k facets meeting V_k,
    in slice order; ups(F): codim-(k+1) facets in the closure of F;
    representative(F): the root with the same support as F.
    Returns (order, parent map).
    """
    n = len(levels) - 1
    root_set = {f for r in roots for f in r}
    root_pos = {f: i for r in roots for i, f in enumerate(r)}
    children: Dict[Hashable, List[Hashable]] = defaultdict(list)
    parent: Dict[Hashable, Hashable] = {}

    def preorder() -> List[Hashable]:
        out: List[Hashable] = []
        for k in range(n + 1):
            for r in roots[k]:
                stack = [r]
                while stack:
                    f = stack.pop()
                    out.append(f)
                    stack.extend(reversed(children.get(f, ())))
        return out

    for k in range(n - 1, -1, -1):
        pos = {f: i for i, f in enumerate(preorder())}
        touched = set()
        for f in levels[k]:
            if f in root_set:
                continue
            cand = [g for g in ups(f) if g in pos]
            if not cand:
                raise AssertionError(f"facet {f} has no boundary facet of codim {k + 1}")
            p = min(cand, key=pos.__getitem__)
            parent[f] = p
            children[p].append(f)
            touched.add(p)
        for p in touched:
            children[p].sort(key=lambda f: -root_pos[representative(f)])
    return preorder(), parent


@dataclass
class PolarOrder:
    poset: FacePoset
    frame: Optional[GenericFrame]  # None for orders built from combinatorial data
    order: List[int]
    position: Dict[int, int]
    slice_meets: List[FrozenSet[int]]  # slice_meets[j] = facets meeting V_j
    min_vertex: Dict[int, Tuple[Vector, int]]  # F -> (P_F in frame coordinates, i_F)
    parent: Dict[int, int]
    slice_points: Dict[int, Vector]  # root F (codim k, meets V_k) -> F meet V_k

    def less(self, f: int, g: int) -> bool:
        return self.position[f] < self.position[g]

    def meets(self, f: int, j: Optional[int] = None) -> bool:
        """Whether F meets V_j; j defaults to codim F."""
        if j is None:
            j = self.poset.facets[f].codim
        return f in self.slice_meets[j]

    def key(self, f: int) -> PolarKey:
        return theta_key(self.min_vertex[f][0])

    def to_json(self) -> dict:
        fs = self.poset.facets
        return {
            "order": [{"id": f, "signs": list(fs[f].signs)} for f in self.order],
            "slice_meets": {str(j): sorted(s) for j, s in enumerate(self.slice_meets)},
            "frame": self.frame.to_json() if self.frame is not None else None,
        }


def facet_min_vertex(order: PolarOrder, f: int) -> Tuple[Vector, PolarKey, int]:
    p, i = order.min_vertex[f]
    return p, theta_key(p), i


def polar_compare(order: PolarOrder, f: int, g: int) -> int:
    """-1 if F precedes G. Cases (i) and (iia) directly; otherwise the forest recursion."""
    if f == g:
        raise ValueError("polar_compare needs distinct facets")
    pf, pg = order.min_vertex[f][0], order.min_vertex[g][0]
    if pf != pg:
        return -1 if theta_key(pf) < theta_key(pg) else 1
    n = order.poset.arrangement.dim
    if order.poset.facets[f].codim == n:
        return -1
    if order.poset.facets[g].codim == n:
        return 1
    return -1 if order.less(f, g) else 1


class OrderAuditError(AssertionError):
    pass


def _slices(ay: Arrangement, poset: FacePoset, frame: GenericFrame) -> List[Dict[Signs, Vector]]:
    """Facets of A meet V_j for j = 0..n, by sign vector, with witnesses in R^j."""
    n = ay.dim
    out: List[Dict[Signs, Vector]] = [{ay.signs(tuple(Fraction(0) for _ in range(n))): ()}]
    for j in range(1, n):
        out.append(affine_facets(restrict(ay, j)))
    inv = inverse(frame.matrix)
    t = frame.translation
    out.append({f.signs: matvec(inv, [a - b for a, b in zip(f.witness, t)]) for f in poset.facets})
    return out


def _order_in_frame(poset: FacePoset, ay: Arrangement, slices: List[Dict[Signs, Vector]], n: int) -> Tuple[List[int], Dict[int, int], Dict[int, Vector]]:
    """Run the forest construction for the facets of ``poset`` (all in V_n)."""
    fs = poset.facets
    levels = [[f.id for f in fs if f.codim == k] for k in range(n + 1)]
    roots: List[List[int]] = []
    points: Dict[int, Vector] = {}
    for k in range(n + 1):
        rk = []
        for f in levels[k]:
            s = fs[f].signs
            if s in slices[k]:
                p = tuple(slices[k][s]) + tuple(Fraction(0) for _ in range(n - k))
                points[f] = p
                rk.append(f)
        rk.sort(key=lambda f: theta_key(points[f]).sort_key)
        roots.append(rk)
    by_zero = {}
    for k in range(n + 1):
        for f in roots[k]:
            by_zero[fs[f].zero_set] = f
    order, parent = polar_forest(
        levels, roots, lambda f: poset.up[f], lambda f: by_zero[fs[f].zero_set]
    )
    return order, parent, points


def _min_vertices(poset: FacePoset, roots_points: Dict[int, Vector], n: int) -> Dict[int, Tuple[Vector, int]]:
    fs = poset.facets
    m = len(poset.arrangement.hyperplanes)
    out: Dict[int, Tuple[Vector, int]] = {}
    all_ids = [f.id for f in fs]
    a = np.array([f.signs for f in fs], dtype=np.int8).reshape(len(fs), m)
    remaining = set(all_ids)
    # V_0: the origin lies in the open base chamber only
    origin = tuple(Fraction(0) for _ in range(n))
    for j in range(n + 1):
        verts = [f for f, p in roots_points.items() if fs[f].codim == j]
        if j == 0:
            for f in verts:
                out[f] = (origin, 0)
                remaining.discard(f)
            continue
        if not verts or not remaining:
            continue
        b = np.array([fs[v].signs for v in verts], dtype=np.int8).reshape(len(verts), m)
        mat = kernels.face_leq_matrix(a, b)
        for f in list(remaining):
            hits = [verts[i] for i in np.nonzero(mat[f])[0]]
            if hits:
                best = min(hits, key=lambda v: theta_key(roots_points[v]).sort_key)
                out[f] = (roots_points[best], j)
                remaining.discard(f)
    if remaining:
        raise OrderAuditError(f"facets without a minimal vertex: {sorted(remaining)[:5]}")
    return out


def audit_order(po: PolarOrder, lat: IntersectionLattice, slice_orders: Optional[List[List[Signs]]] = None) -> List[str]:
    """Return a list of violated properties (empty when the order passes)."""
    problems = []
    fs = po.poset.facets
    n = po.poset.arrangement.dim
    pos = po.position
    if po.min_vertex:
        # case (i): Theta is monotone along the order
        keys = [theta_key(po.min_vertex[f][0]).sort_key for f in po.order]
        if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
            problems.append("Theta keys are not monotone along the order")
        # case (iia): a vertex precedes every facet sharing its minimal vertex
        first = {}
        for f in po.order:
            first.setdefault(po.min_vertex[f][0], f)
        for f in po.poset.of_codim(n):
            if first[po.min_vertex[f][0]] != f:
                problems.append(f"vertex {f} is not first in its group")
                break
    # local ordering property
    for f in fs:
        if f.codim == n:
            continue
        lower = [g for g in po.poset.up[f.id] if pos[g] < pos[f.id]]
        if po.meets(f.id):
            if lower:
                problems.append(f"facet {f.id} meets V_{f.codim} but has a lower boundary facet")
                break
        elif len(lower) != 1:
            problems.append(f"facet {f.id} has {len(lower)} lower boundary facets")
            break
    # one slice representative per flat
    for k in range(n + 1):
        reps = [f for f in po.poset.of_codim(k) if po.meets(f)]
        if len(reps) != len(lat.of_rank(k)):
            problems.append(f"{len(reps)} codim-{k} facets meet V_{k}, expected {len(lat.of_rank(k))}")
    if slice_orders:
        for j, sub in enumerate(slice_orders):
            if sub is None:
                continue
            glob = [fs[f].signs for f in po.order if f in po.slice_meets[j]]
            if glob != sub:
                problems.append(f"restriction to V_{j} differs from the slice order")
    return problems


def _slice_order_signs(ay: Arrangement, slices: List[Dict[Signs, Vector]], j: int) -> List[Signs]:
    """Polar order of A meet V_j computed inside R^j (identity frame there)."""
    from .faces import face_poset

    sub = restrict(ay, j)
    sp = face_poset(sub)
    if {f.signs for f in sp.facets} != set(slices[j]):
        raise OrderAuditError(f"slice {j} facets disagree")
    sub_slices = [slices[i] for i in range(j)] + [{f.signs: f.witness for f in sp.facets}]
    sub_slices = [{s: tuple(w[:i]) for s, w in d.items()} for i, d in enumerate(sub_slices)]
    order, _, _ = _order_in_frame(sp, sub, sub_slices, j)
    return [sp.facets[f].signs for f in order]


def polar_order_all(poset: FacePoset, seed: int = 0, max_attempts: int = MAX_ATTEMPTS,
                    check_slices: bool = True) -> PolarOrder:
    """Sample a verified frame and build the audited polar order."""
    arr = poset.arrangement
    n = arr.dim
    if n == 0 or not arr.hyperplanes:
        f = poset.facets[0].id
        frame = GenericFrame.identity(n)
        origin = tuple(Fraction(0) for _ in range(n))
        return PolarOrder(poset, frame, [f], {f: 0}, [frozenset([f])] * (n + 1),
                          {f: (origin, 0)}, {}, {f: origin})
    lat = build_lattice(arr)
    built: Dict[str, PolarOrder] = {}

    def accept(frame: GenericFrame) -> Optional[str]:
        ay = frame.apply(arr)
        try:
            slices = _slices(ay, poset, frame)
            order, parent, points = _order_in_frame(poset, ay, slices, n)
            mins = _min_vertices(poset, points, n)
        except (ArrangementError, OrderAuditError, AssertionError) as exc:
            return f"order construction failed: {exc}"
        meets = [frozenset(poset.by_signs[s] for s in slices[j]) for j in range(n + 1)]
        po = PolarOrder(poset, frame, order, {f: i for i, f in enumerate(order)}, meets,
                        mins, parent, points)
        sub = None
        if check_slices:
            try:
                sub = [None] + [_slice_order_signs(ay, slices, j) for j in range(1, n)]
            except (ArrangementError, OrderAuditError, AssertionError) as exc:
                return f"slice order failed: {exc}"
        problems = audit_order(po, build_lattice(ay), sub)
        if problems:
            return problems[0]
        built["po"] = po
        return None

    sample_frame(arr, seed, max_attempts, accept)
    return built["po"]
