"""Homology of a Laurent chain complex after specializing the local system."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Union

from sympy import Matrix as SymMatrix
from sympy.polys.domains import ZZ
from sympy.matrices.normalforms import invariant_factors

from .geometry import rank
from .laurent import Matrix, specialize

Spec = Union[str, Sequence[Fraction]]


class HomologyError(AssertionError):
    pass


@dataclass
class HomologyResult:
    ranks: List[int]
    torsion: List[List[int]] = field(default_factory=list)
    values: Optional[List[Fraction]] = None

    @property
    def euler(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def to_json(self) -> dict:
        out = {"ranks": self.ranks, "euler": self.euler}
        if self.values is None:
            out["torsion"] = self.torsion
        else:
            out["values"] = [str(v) for v in self.values]
        return out


def parse_spec(text: str, nvars: int) -> List[Fraction]:
    """'t1=2,t2=-1/3' (1-based, unnamed variables default to 1) or a bare list '2,3'."""
    values = [Fraction(1)] * nvars
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if parts and all("=" not in p for p in parts):
        if len(parts) != nvars:
            raise ValueError(f"expected {nvars} values, got {len(parts)}")
        values = [Fraction(p) for p in parts]
    else:
        for p in parts:
            key, _, val = p.partition("=")
            key = key.strip().lstrip("tT_H").strip("_")
            i = int(key) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"no hyperplane {key}")
            values[i] = Fraction(val.strip())
    if any(v == 0 for v in values):
        raise ValueError("specialization values must be nonzero")
    return values


def _snf_torsion(m: Sequence[Sequence[Fraction]]) -> List[int]:
    if any(Fraction(x).denominator != 1 for r in m for x in r):
        raise HomologyError("integral mode needs integer matrices")
    rows = [[int(x) for x in r] for r in m]
    if not rows or not rows[0]:
        return []
    inv = invariant_factors(SymMatrix(rows), domain=ZZ)
    return sorted(abs(int(d)) for d in inv if abs(int(d)) > 1)


def homology(matrices: Mapping[int, Matrix], sizes: Sequence[int], spec: Spec = "integral") -> HomologyResult:
    """Ranks of H_k for d_k : C_k -> C_{k-1}; ``spec`` is "integral" (all t_H = 1,
    with torsion by Smith normal form) or a list of nonzero rationals."""
    n = len(sizes) - 1
    nvars = next((x.nvars for m in matrices.values() for row in m for x in row), 0)
    integral = isinstance(spec, str)
    if integral and spec != "integral":
        raise ValueError("spec must be 'integral' or a list of values")
    values = [Fraction(1)] * nvars if integral else [Fraction(v) for v in spec]
    if len(values) != nvars and nvars:
        raise ValueError(f"expected {nvars} specialization values")
    if any(v == 0 for v in values):
        raise ZeroDivisionError("specialization values must be nonzero")
    num: Dict[int, List[List[Fraction]]] = {}
    for k in range(1, n + 1):
        m = matrices.get(k, [])
        if len(m) != sizes[k - 1] or any(len(r) != sizes[k] for r in m):
            raise HomologyError(f"d_{k} has the wrong shape")
        num[k] = specialize(m, values) if nvars else [[Fraction(0)] * sizes[k] for _ in range(sizes[k - 1])]
    rk = {k: rank(num[k]) if sizes[k] and sizes[k - 1] else 0 for k in num}
    ranks = [sizes[k] - rk.get(k, 0) - rk.get(k + 1, 0) for k in range(n + 1)]
    if sum((-1) ** k * r for k, r in enumerate(ranks)) != sum((-1) ** k * c for k, c in enumerate(sizes)):
        raise HomologyError("Euler characteristic is not preserved")
    if integral:
        torsion = [_snf_torsion(num[k + 1]) if k + 1 in num else [] for k in range(n + 1)]
        return HomologyResult(ranks, torsion)
    return HomologyResult(ranks, values=values)
