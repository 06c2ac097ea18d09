"""Tableau calculus for the Salvetti complex of the braid arrangement A_n.

A k-cell [C < F] is a tableau with n+1 boxes and n+1-k rows: rows are the
level sets of a point of F listed by increasing value, and the column order
inside a row records on which side of x_i = x_j the chamber C lies. Facets
are the row-standard tableaux.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from sympy.functions.combinatorial.numbers import stirling

from .faces import FacePoset, Signs, poset_from_witnesses
from .geometry import Arrangement, Essentialization, dot, essentialize, vec
from .polar import PolarOrder, audit_order, polar_forest
from .lattice import build_lattice

Rows = Tuple[Tuple[int, ...], ...]
Pairs = Tuple[Tuple[int, int], ...]


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class Tableau:
    rows: Rows

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        entries = sorted(x for r in rows for x in r)
        if any(not r for r in rows) or entries != list(range(1, len(entries) + 1)):
            raise BraidError(f"{list(map(list, rows))} is not a tableau on 1..{len(entries)}")

    @classmethod
    def of(cls, *rows: Sequence[int]) -> "Tableau":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return self.size - 1

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.size - self.nrows

    @property
    def is_standard(self) -> bool:
        return all(list(r) == sorted(r) for r in self.rows)

    def standard(self) -> "Tableau":
        return Tableau(tuple(tuple(sorted(r)) for r in self.rows))

    def row_of(self, r: int) -> int:
        """1-based row containing r."""
        for i, row in enumerate(self.rows):
            if r in row:
                return i + 1
        raise BraidError(f"{r} is not an entry")

    def first_entry(self, i: int) -> int:
        return self.rows[i - 1][0]

    def op(self) -> "Tableau":
        return Tableau(self.rows[::-1])

    def support(self) -> FrozenSet[FrozenSet[int]]:
        """The flat |T|: the partition of the entries into rows."""
        return frozenset(frozenset(r) for r in self.rows)

    def act(self, perm: Sequence[int]) -> "Tableau":
        """Left action of the symmetric group: entry r becomes perm[r - 1]."""
        return Tableau(tuple(tuple(perm[x - 1] for x in r) for r in self.rows))

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def pretty(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows)

    def __str__(self) -> str:
        return "[" + "|".join(" ".join(map(str, r)) for r in self.rows) + "]"


def identity(n: int) -> Tableau:
    """The identity 0-tableau of A_n: one column 1..n+1."""
    return Tableau(tuple((i,) for i in range(1, n + 2)))


def moving_function(t: Tableau, j: int, r: int) -> Tableau:
    """M_{j,r}: move r into row j (rows counted after removing r); j = 0 makes r a new first row."""
    rows = [list(x) for x in t.rows]
    i = t.row_of(r) - 1
    rows[i].remove(r)
    if not rows[i]:
        del rows[i]
    if not 0 <= j <= len(rows):
        raise BraidError(f"row {j} out of range for {t}")
    if j == 0:
        rows.insert(0, [r])
    else:
        rows[j - 1] = sorted(rows[j - 1] + [r])
    return Tableau(tuple(tuple(x) for x in rows))


def moves(t: Tableau, r: int) -> List[Tableau]:
    """M_r(T) = {M_{j,r}(T)}_{0<j<i}, i the row of r, in decreasing j."""
    i = t.row_of(r)
    return [moving_function(t, j, r) for j in range(i - 1, 0, -1)]


def project(t: Tableau, m: int) -> Tableau:
    """p_{n,m}: forget the entries >= m + 2."""
    return Tableau(tuple(r for r in (tuple(x for x in row if x <= m + 1) for row in t.rows) if r))


def include(t: Tableau, n: int) -> Tableau:
    """i_{m,n}: append the singleton rows m+2, ..., n+1."""
    return Tableau(t.rows + tuple((x,) for x in range(t.size + 1, n + 2)))


def m_index(t: Tableau) -> int:
    """m_T: least m >= 0 with dim p_{n,m}(T) = dim T."""
    return next(m for m in range(t.n + 1) if project(t, m).dim == t.dim)


def t_block(t: Tableau, h: int) -> List[Tableau]:
    """The ordered T-block Q_{n,h}(T)."""
    k, m = t.dim, m_index(t)
    if not m + 1 - k < h <= t.n + 1 - k:
        raise BraidError(f"h = {h} outside ({m + 1 - k}, {t.n + 1 - k}] for {t}")
    out: List[Tableau] = []
    cur = t
    for i in range(m + 2 - k, h + 1):
        e = t.first_entry(i)
        out.extend(moves(cur, e))
        cur = moving_function(cur, 0, e)
    return out


def precedes(u: Tableau, t: Tableau) -> bool:
    """U < T in the face order: T is in the closure of U (consecutive rows of U merge into T)."""
    i = 0
    for row in t.rows:
        acc: set = set()
        while i < len(u.rows) and len(acc) < len(row):
            acc |= set(u.rows[i])
            i += 1
        if acc != set(row):
            return False
    return i == len(u.rows)


def reflect(t: Tableau, u: Tableau) -> Tableau:
    """r_T on the star of T: reverse the order of the rows of U inside each row of T."""
    if not precedes(u, t):
        raise BraidError(f"{u} is not in the star of {t}")
    out: List[Tuple[int, ...]] = []
    i = 0
    for row in t.rows:
        group = []
        while sum(len(g) for g in group) < len(row):
            group.append(u.rows[i])
            i += 1
        out.extend(reversed(group))
    return Tableau(tuple(out))


def reflect_through(block: Sequence[Tableau], u: Tableau) -> Tableau:
    """r_Q(U): reflect successively through every member of Q having the current tableau in its star."""
    cur = u
    for t in block:
        if precedes(cur, t):
            cur = reflect(t, cur)
    return cur


def pi_recursive(n: int, k: int) -> List[Tableau]:
    """pi_k(A_n) as the ordered image of the T-block map on pi_{k-1}(A_{n-1})."""
    if k == 0:
        return [identity(n)]
    if k > n:
        return []
    prev = pi_recursive(n - 1, k - 1)
    h = n + 2 - k
    blocks: List[List[Tableau]] = []
    out: List[Tableau] = []
    for i, ti in enumerate(prev):
        cur = include(ti, n)
        for block in blocks[:i]:
            cur = reflect_through(block, cur)
        blocks.append(t_block(cur, h))
        out.extend(blocks[-1])
    return out


def _column(entries: Sequence[int]) -> List[List[int]]:
    return [[x] for x in entries]


def _explicit(n: int, k: int) -> Iterator[Tuple[Pairs, Tableau]]:
    for js in combinations(range(2, n + 2), k):
        bounds = (0,) + js + (n + 2,)

        def grow(t: int, rows: List[List[int]], pairs: Pairs):
            if t > k:
                yield pairs, Tableau(tuple(tuple(r) for r in rows))
                return
            j = bounds[t]
            flipped = rows[::-1]
            for i in range(1, len(flipped) + 1):
                nxt = [list(r) for r in flipped]
                nxt[i - 1].append(j)
                nxt += _column(range(j + 1, bounds[t + 1]))
                yield from grow(t + 1, nxt, pairs + ((j, i),))

        yield from grow(1, _column(range(1, bounds[1])), ())


def pair_key(pairs: Pairs) -> Tuple[Tuple[int, int], ...]:
    """(j, i) < (j', i') iff j < j', or j = j' and i > i'; sequences compare lexicographically."""
    return tuple((j, -i) for j, i in pairs)


@dataclass
class PiK:
    n: int
    k: int
    tableaux: List[Tableau]
    pairs: List[Pairs]

    def __len__(self) -> int:
        return len(self.tableaux)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "tableaux": [t.to_json() for t in self.tableaux],
                "pairs": [[list(p) for p in ps] for ps in self.pairs]}


def build_pi_k(n: int, k: int, check: bool = True) -> PiK:
    """pi_k(A_n) from the explicit pair form, ordered by pair sequences; with ``check``
    it must coincide, in order, with the recursive T-block construction."""
    if not 0 <= k <= n:
        raise BraidError(f"need 0 <= k <= n, got k={k}, n={n}")
    items = sorted(_explicit(n, k), key=lambda it: pair_key(it[0]))
    tabs = [t for _, t in items]
    if check:
        if tabs != pi_recursive(n, k):
            raise AssertionError(f"explicit and recursive pi_{k}(A_{n}) differ")
        if len(tabs) != stirling(n + 1, n + 1 - k):
            raise AssertionError(f"|pi_{k}(A_{n})| is not S({n + 1}, {n + 1 - k})")
        if len({t.support() for t in tabs}) != len(tabs):
            raise AssertionError("two singular tableaux share a support")
    return PiK(n, k, tabs, [p for p, _ in items])


def decompose(t: Tableau) -> Optional[Pairs]:
    """The pair sequence ((j_1,i_1),...,(j_k,i_k)) producing T, or None."""
    if not t.is_standard:
        return None
    if t.dim == 0:
        return () if t == identity(t.n) else None
    rows = [list(r) for r in t.rows]
    j = max(x for r in rows if len(r) > 1 for x in r)
    tail = t.n + 1 - j
    if tail and rows[-tail:] != _column(range(j + 1, t.n + 2)):
        return None
    if tail:
        rows = rows[:-tail]
    i = next(a for a, r in enumerate(rows) if j in r)
    rows[i].remove(j)
    inner = decompose(Tableau(tuple(tuple(r) for r in rows[::-1])))
    return None if inner is None else inner + ((j, i + 1),)


def braid_meets_Vk(t: Tableau) -> bool:
    return decompose(t) is not None


# -- geometry of A_n ----------------------------------------------------------------


def braid_pairs(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(1, n + 2), 2))


def braid_arrangement(n: int) -> Arrangement:
    """x_i = x_j for i < j, oriented so that the positive side is x_i < x_j."""
    normals = []
    for i, j in braid_pairs(n):
        a = [0] * (n + 1)
        a[i - 1], a[j - 1] = -1, 1
        normals.append(a)
    return Arrangement.from_normals(normals, dim=n + 1)


def ordered_partitions(items: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    for size in range(1, len(items) + 1):
        for first in combinations(items, size):
            rest = [x for x in items if x not in first]
            for tail in ordered_partitions(rest):
                yield (first,) + tail


def _less(signs: Signs, index: Dict[Tuple[int, int], int], a: int, b: int) -> int:
    """+1 if x_a < x_b, -1 if x_a > x_b, 0 if equal."""
    if a == b:
        return 0
    return signs[index[(a, b)]] if a < b else -signs[index[(b, a)]]


@dataclass
class BraidComplex:
    n: int
    essential: Essentialization
    poset: FacePoset
    index: Dict[Tuple[int, int], int]
    facet_of: Dict[Tableau, int]
    tableau_of: Dict[int, Tableau]

    def facet_signs(self, t: Tableau) -> Signs:
        row = {x: t.row_of(x) for x in range(1, t.size + 1)}
        return tuple((row[j] > row[i]) - (row[j] < row[i]) for i, j in braid_pairs(self.n))

    def chamber_signs(self, t: Tableau) -> Signs:
        pos = {x: (a, b) for a, r in enumerate(t.rows) for b, x in enumerate(r)}
        return tuple(1 if pos[i] < pos[j] else -1 for i, j in braid_pairs(self.n))

    def tableau_to_cell(self, t: Tableau) -> Tuple[int, int]:
        if t.size != self.n + 1:
            raise BraidError(f"{t} is not a tableau of A_{self.n}")
        f = self.poset.by_signs[self.facet_signs(t)]
        c = self.poset.by_signs[self.chamber_signs(t)]
        if not self.poset.leq(c, f):
            raise AssertionError("chamber signs do not refine the facet")
        return c, f

    def _levels(self, signs: Signs) -> List[List[int]]:
        ent = range(1, self.n + 2)
        level = {a: sum(1 for b in ent if _less(signs, self.index, b, a) > 0) for a in ent}
        return [[a for a in ent if level[a] == v] for v in sorted(set(level.values()))]

    def facet_tableau(self, f: int) -> Tableau:
        return Tableau(tuple(tuple(r) for r in self._levels(self.poset.facets[f].signs)))

    def cell_to_tableau(self, cell: Tuple[int, int]) -> Tableau:
        c, f = cell
        if not self.poset.leq(c, f):
            raise BraidError(f"{cell} is not a cell")
        cs = self.poset.facets[c].signs
        rows = []
        for row in self._levels(self.poset.facets[f].signs):
            members = list(row)
            rows.append(tuple(sorted(members, key=lambda a: sum(1 for b in members if _less(cs, self.index, b, a) > 0))))
        return Tableau(tuple(rows))


def braid_complex(n: int) -> BraidComplex:
    """Face poset of the essentialized A_n built from ordered set partitions."""
    if n < 1:
        raise BraidError("the braid arrangement needs n >= 1")
    ess = essentialize(braid_arrangement(n))
    raw: Dict[Signs, Tuple[Fraction, ...]] = {}
    for parts in ordered_partitions(list(range(1, n + 2))):
        t = Tableau(parts)
        x = [0] * (n + 1)
        for lvl, row in enumerate(parts):
            for a in row:
                x[a - 1] = lvl
        z = tuple(dot(b, vec(x)) for b in ess.basis)
        raw[ess.arrangement.signs(z)] = z
    poset = poset_from_witnesses(ess.arrangement, raw)
    index = {p: i for i, p in enumerate(braid_pairs(n))}
    bc = BraidComplex(n, ess, poset, index, {}, {})
    for fct in poset.facets:
        t = bc.facet_tableau(fct.id)
        bc.facet_of[t] = fct.id
        bc.tableau_of[fct.id] = t
    return bc


def braid_order(bc: BraidComplex, check: bool = True) -> PolarOrder:
    """Polar order of the braid complex from the singular tableaux pi_k(A_n) alone."""
    n, poset = bc.n, bc.poset
    roots = [[bc.facet_of[t] for t in build_pi_k(n, k, check).tableaux] for k in range(n + 1)]
    by_support = {bc.tableau_of[f].support(): f for r in roots for f in r}
    levels = [poset.of_codim(k) for k in range(n + 1)]
    order, parent = polar_forest(levels, roots, lambda f: poset.up[f],
                                 lambda f: by_support[bc.tableau_of[f].support()])
    meets = [frozenset(r) for r in roots]
    po = PolarOrder(poset, None, order, {f: i for i, f in enumerate(order)}, meets, {}, parent, {})
    if check:
        problems = audit_order(po, build_lattice(poset.arrangement))
        if problems:
            raise AssertionError(problems[0])
    return po


def braid_polar_compare(po: PolarOrder, bc: BraidComplex, t: Tableau, u: Tableau) -> int:
    """-1 if the facet of T precedes that of U in the tableau polar order, else 1."""
    f, g = bc.facet_of[t.standard()], bc.facet_of[u.standard()]
    if f == g:
        raise ValueError("braid_polar_compare needs distinct facets")
    return -1 if po.less(f, g) else 1


def act_on_signs(bc: BraidComplex, signs: Signs, perm: Sequence[int]) -> Signs:
    """Coordinate permutation y_{perm(a)} = x_a on sign vectors."""
    inv = {perm[a - 1]: a for a in range(1, bc.n + 2)}
    return tuple(_less(signs, bc.index, inv[i], inv[j]) for i, j in braid_pairs(bc.n))


def critical_tableaux(bc: BraidComplex, critical: Sequence[Sequence[Tuple[int, int]]]) -> List[List[Tableau]]:
    return [[bc.cell_to_tableau(c) for c in cs] for cs in critical]
