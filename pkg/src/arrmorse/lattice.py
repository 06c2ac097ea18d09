"""Intersection lattice of flats, Moebius values and Whitney numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .geometry import Arrangement, Vector, dot, rank, solve_affine


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set of equations rows . x = rhs, kept with a point and direction basis."""

    point: Vector
    directions: Tuple[Vector, ...]
    rows: Tuple[Vector, ...]
    rhs: Tuple[Fraction, ...]

    @property
    def ambient(self) -> int:
        return len(self.point)

    @property
    def dim(self) -> int:
        return len(self.directions)

    @classmethod
    def from_equations(cls, rows, rhs, n: int) -> Optional["AffineSubspace"]:
        rows = tuple(tuple(r) for r in rows)
        rhs = tuple(rhs)
        sol = solve_affine(rows, rhs, n)
        if sol is None:
            return None
        return cls(sol[0], tuple(sol[1]), rows, rhs)

    @classmethod
    def coordinate(cls, i: int, n: int) -> "AffineSubspace":
        """V_i = span(e_1..e_i), cut out by x_{i+1} = ... = x_n = 0."""
        rows = [tuple(Fraction(int(j == c)) for j in range(n)) for c in range(i, n)]
        return cls.from_equations(rows, [Fraction(0)] * (n - i), n)

    def intersect(self, other: "AffineSubspace") -> Optional["AffineSubspace"]:
        return AffineSubspace.from_equations(
            self.rows + other.rows, self.rhs + other.rhs, self.ambient
        )

    def contains_hyperplane_of(self, normal, offset) -> bool:
        """Whether this subspace lies inside {normal . x = offset}."""
        return dot(normal, self.point) == offset and all(dot(normal, d) == 0 for d in self.directions)


@dataclass(frozen=True)
class Flat:
    support: AffineSubspace
    rank: int
    defining_set: FrozenSet[int]

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.rank, tuple(sorted(self.defining_set)))


@dataclass
class IntersectionLattice:
    arrangement: Arrangement
    flats: List[Flat]
    moebius: Dict[FrozenSet[int], int] = field(default_factory=dict)

    def index(self) -> Dict[FrozenSet[int], Flat]:
        return {f.defining_set: f for f in self.flats}

    def of_rank(self, k: int) -> List[Flat]:
        return [f for f in self.flats if f.rank == k]

    def leq(self, x: Flat, y: Flat) -> bool:
        """Reverse inclusion: x <= y iff y's support lies in x's support."""
        return x.defining_set <= y.defining_set

    @property
    def top_rank(self) -> int:
        return max(f.rank for f in self.flats)


def _closure(arr: Arrangement, sub: AffineSubspace) -> FrozenSet[int]:
    return frozenset(
        i for i, h in enumerate(arr.hyperplanes) if sub.contains_hyperplane_of(h.normal, h.offset)
    )


def _flat_from_set(arr: Arrangement, idx) -> Optional[AffineSubspace]:
    hs = [arr.hyperplanes[i] for i in sorted(idx)]
    return AffineSubspace.from_equations(
        [h.normal for h in hs], [h.offset for h in hs], arr.dim
    )


def build_lattice(arr: Arrangement) -> IntersectionLattice:
    """All nonempty intersections, built rank by rank from the previous rank."""
    n = arr.dim
    whole = AffineSubspace.from_equations([], [], n)
    flats = [Flat(whole, 0, frozenset())]
    layer = {frozenset(): flats[0]}
    k = 0
    while layer:
        nxt: Dict[FrozenSet[int], Flat] = {}
        for x in layer.values():
            for i, h in enumerate(arr.hyperplanes):
                if i in x.defining_set:
                    continue
                sub = x.support.intersect(
                    AffineSubspace.from_equations([h.normal], [h.offset], n)
                )
                if sub is None:
                    continue
                closed = _closure(arr, sub)
                if closed in nxt:
                    continue
                sub = _flat_from_set(arr, closed)
                nxt[closed] = Flat(sub, k + 1, closed)
        k += 1
        ordered = sorted(nxt.values(), key=lambda f: f.key)
        flats.extend(ordered)
        layer = {f.defining_set: f for f in ordered}
    lat = IntersectionLattice(arr, flats)
    lat.moebius = moebius_values(lat)
    return lat


def moebius_values(lat: IntersectionLattice) -> Dict[FrozenSet[int], int]:
    mu: Dict[FrozenSet[int], int] = {}
    for x in lat.flats:
        if x.rank == 0:
            mu[x.defining_set] = 1
            continue
        mu[x.defining_set] = -sum(
            mu[y.defining_set] for y in lat.flats
            if y.rank < x.rank and y.defining_set < x.defining_set
        )
    return mu


def whitney_numbers(lat: IntersectionLattice) -> List[int]:
    """b_k = sum of |mu(0, X)| over rank-k flats; padded to the ambient dimension."""
    b = [0] * (lat.arrangement.dim + 1)
    for f in lat.flats:
        b[f.rank] += abs(lat.moebius[f.defining_set])
    return b


def transversal(flat: Flat, subspace: AffineSubspace) -> bool:
    """dim(subspace meet flat) == dim(subspace) - rank(flat); a negative target means empty."""
    target = subspace.dim - flat.rank
    meet = flat.support.intersect(subspace)
    if target < 0:
        return meet is None
    return meet is not None and meet.dim == target
