"""Integer Laurent polynomials in t_1..t_m, with exact specialization."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Exp = Tuple[int, ...]


class Laurent:
    """Immutable; terms is a mapping exponent tuple -> nonzero int."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, int] = ()):
        clean = {}
        for e, c in dict(terms).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                clean[tuple(e)] = int(c)
        self.nvars = nvars
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "Laurent":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int = 1) -> "Laurent":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "Laurent":
        return cls(len(exps), {tuple(exps): c})

    @property
    def terms(self) -> Dict[Exp, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(self.nvars, other)
        return isinstance(other, Laurent) and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self._terms))
        return self._hash

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, int):
            return Laurent.const(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return other

    def __add__(self, other) -> "Laurent":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return Laurent(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent(self.nvars, {e: -c for e, c in self._terms})

    def __sub__(self, other) -> "Laurent":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Laurent":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Laurent":
        other = self._coerce(other)
        out: Dict[Exp, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent(self.nvars, out)

    __rmul__ = __mul__

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        if any(v == 0 for v in values):
            raise ZeroDivisionError("specialization values must be nonzero")
        total = Fraction(0)
        for e, c in self._terms:
            term = Fraction(c)
            for v, k in zip(values, e):
                term *= Fraction(v) ** k
            total += term
        return total

    def to_json(self) -> List[dict]:
        return [{"exponents": list(e), "coefficient": c} for e, c in self._terms]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            mono = "*".join(
                f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Laurent({self})"


Matrix = List[List[Laurent]]


def zeros(rows: int, cols: int, nvars: int) -> Matrix:
    z = Laurent.zero(nvars)
    return [[z] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, nvars: int) -> Matrix:
    if not a or not b:
        return zeros(len(a), len(b[0]) if b else 0, nvars)
    out = zeros(len(a), len(b[0]), nvars)
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in enumerate(b[k]):
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return out


def specialize(m: Matrix, values: Sequence[Fraction]) -> List[List[Fraction]]:
    return [[x.evaluate(values) for x in row] for row in m]


def is_zero_matrix(m: Iterable[Iterable[Laurent]]) -> bool:
    return all(x.is_zero() for row in m for x in row)
