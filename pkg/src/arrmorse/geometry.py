"""Exact rational linear algebra and arrangement containers."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

Vector = Tuple[Fraction, ...]
Number = Union[int, str, Fraction]


class ArrangementError(ValueError):
    pass


def frac(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; pass a string or int")
    return Fraction(x)


def vec(xs: Iterable[Number]) -> Vector:
    return tuple(frac(x) for x in xs)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def rref(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None):
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> list:
    """Basis of {x : r.x = 0 for all rows}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, piv = rref(rows, n)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(red, piv):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_affine(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n: int):
    """Solve rows . x = rhs. Returns (particular solution, direction basis) or None."""
    if not rows:
        return tuple([Fraction(0)] * n), nullspace([], n)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, piv):
        x[pc] = row[n]
    return tuple(x), nullspace(rows, n)


def inverse(m: Sequence[Sequence[Fraction]]):
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [tuple(r[n:]) for r in red]


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(dot(r, v) for r in m)


def transpose(m: Sequence[Sequence[Fraction]]):
    return [tuple(c) for c in zip(*m)]


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = offset}"""

    normal: Vector
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ArrangementError("hyperplane normal must be nonzero")

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence[Fraction]) -> int:
        return sign(self.value(x))

    def canonical(self) -> Tuple[Fraction, ...]:
        """Scale so the first nonzero normal entry is 1 (sign-insensitive identity)."""
        lead = next(c for c in self.normal if c != 0)
        return tuple(c / lead for c in self.normal) + (self.offset / lead,)


@dataclass(frozen=True)
class Arrangement:
    hyperplanes: Tuple[Hyperplane, ...]
    dim: int

    def __post_init__(self):
        for h in self.hyperplanes:
            if len(h.normal) != self.dim:
                raise ArrangementError(f"normal {h.normal} has wrong length for dim {self.dim}")
        seen = {}
        for i, h in enumerate(self.hyperplanes):
            key = h.canonical()
            if key in seen:
                raise ArrangementError(f"hyperplanes {seen[key]} and {i} coincide")
            seen[key] = i

    @classmethod
    def from_normals(cls, normals, offsets=None, dim: Optional[int] = None) -> "Arrangement":
        normals = [vec(a) for a in normals]
        if dim is None:
            if not normals:
                raise ArrangementError("dim required for an empty arrangement")
            dim = len(normals[0])
        offsets = [0] * len(normals) if offsets is None else offsets
        return cls(tuple(Hyperplane(a, frac(b)) for a, b in zip(normals, offsets)), dim)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def rank(self) -> int:
        return rank([h.normal for h in self.hyperplanes])

    @property
    def is_essential(self) -> bool:
        return self.rank == self.dim

    def signs(self, x: Sequence[Fraction]) -> Tuple[int, ...]:
        return tuple(h.side(x) for h in self.hyperplanes)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "hyperplanes": [
                {"normal": [str(c) for c in h.normal], "offset": str(h.offset)}
                for h in self.hyperplanes
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            n = int(data["dim"])
            hs = tuple(
                Hyperplane(vec(h["normal"]), frac(h.get("offset", "0")))
                for h in data["hyperplanes"]
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: {exc}") from exc
        return cls(hs, n)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Arrangement":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class Essentialization:
    """Quotient by the lineality space: z = basis . x."""

    arrangement: Arrangement
    basis: Tuple[Vector, ...]


def essentialize(arr: Arrangement) -> Essentialization:
    normals = [h.normal for h in arr.hyperplanes]
    # greedy: the first normals spanning the normal space become the new coordinates
    basis = []
    for a in normals:
        if rank(basis + [a]) > len(basis):
            basis.append(a)
    r = len(basis)
    bt = transpose(basis) if basis else []
    hs = []
    for h in arr.hyperplanes:
        # solve lam . basis = normal
        sol = solve_affine(bt, h.normal, r)
        assert sol is not None
        hs.append(Hyperplane(sol[0], h.offset))
    return Essentialization(Arrangement(tuple(hs), r), tuple(basis))
