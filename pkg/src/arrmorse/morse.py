"""Morse boundary for abelian local systems, from gradient paths between critical cells.

An admissible sequence from a critical k-cell [C < F] is the list of
codim-(k-1) facets visited by a gradient path: step down to a facet F_j of the
current pivot, move the chamber to c_j = c_{j-1}.F_j, and if the cell
[c_j < F_j] is not critical, continue from its partner [c_j < E] (E becomes
the next pivot). Pivots are grouped into blocks; l = length, b = blocks.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import Laurent, Matrix, is_zero_matrix, matmul, zeros
from .salvetti import Cell, MorseField

DEFAULT_MAX_SEQ = 10 ** 6


class SequenceCapError(RuntimeError):
    pass


class MorseAuditError(AssertionError):
    pass


def max_sequences() -> int:
    raw = os.environ.get("ARRMORSE_MAX_SEQ")
    return int(raw) if raw else DEFAULT_MAX_SEQ


@dataclass
class Galleries:
    """Chamber adjacency, the spanning tree from the rank-one field, and BFS galleries."""

    field: MorseField
    adjacent: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)  # C -> [(D, wall facet)]

    def __post_init__(self):
        poset = self.field.poset
        adj: Dict[int, List[Tuple[int, int]]] = {c: [] for c in poset.chambers}
        for f in poset.of_codim(1):
            a, b = poset.down[f]
            adj[a].append((b, f))
            adj[b].append((a, f))
        self.adjacent = adj
        self._cache: Dict[Tuple[int, int], List[int]] = {}

    @property
    def base(self) -> int:
        return self.field.critical[0][0][0]

    def tree_path(self, c: int) -> List[int]:
        """Gamma(C): chambers from C down to the base chamber along the rank-one pairs."""
        poset = self.field.poset
        path = [c]
        while path[-1] != self.base:
            cur = path[-1]
            up = self.field.match[(cur, cur)]
            wall = up[1]
            a, b = poset.down[wall]
            path.append(b if a == cur else a)
            if len(path) > len(poset.chambers):
                raise MorseAuditError("tree path does not reach the base chamber")
        return path

    def minimal_gallery(self, c: int, d: int) -> List[int]:
        key = (c, d)
        if key in self._cache:
            return self._cache[key]
        prev = {c: None}
        q = deque([c])
        while q:
            x = q.popleft()
            if x == d:
                break
            for y, _ in self.adjacent[x]:
                if y not in prev:
                    prev[y] = x
                    q.append(y)
        path = [d]
        while path[-1] != c:
            path.append(prev[path[-1]])
        path.reverse()
        self._cache[key] = path
        return path

    def crossings(self, path: Sequence[int]) -> List[int]:
        """Hyperplane crossed at each step of a gallery."""
        poset = self.field.poset
        out = []
        for a, b in zip(path, path[1:]):
            sep = poset.separating(a, b)
            if len(sep) != 1:
                raise MorseAuditError("gallery steps must cross exactly one hyperplane")
            out.append(next(iter(sep)))
        return out


@dataclass(frozen=True)
class AdmissibleSequence:
    src: Cell
    dst: Cell
    facets: Tuple[int, ...]
    chambers: Tuple[int, ...]  # c_1 .. c_h, c_h = dst chamber
    pivots: Tuple[int, ...]  # pivot of each member

    @property
    def length(self) -> int:
        return len(self.facets)

    @property
    def blocks(self) -> int:
        return 1 + sum(1 for a, b in zip(self.pivots, self.pivots[1:]) if a != b)

    def block_structure(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """(pivot, members); a block after the first repeats the shared facet."""
        out: List[Tuple[int, List[int]]] = []
        for j, (f, p) in enumerate(zip(self.facets, self.pivots)):
            if not out or out[-1][0] != p:
                members = [self.facets[j - 1]] if out else []
                out.append((p, members))
            out[-1][1].append(f)
        return [(p, tuple(m)) for p, m in out]

    def chamber_chain(self) -> Tuple[int, ...]:
        return (self.src[0],) + self.chambers

    def to_json(self) -> dict:
        return {"facets": list(self.facets), "chambers": list(self.chamber_chain()),
                "pivots": list(self.pivots), "l": self.length, "b": self.blocks}


def admissible_sequences(mf: MorseField, src: Cell, cap: Optional[int] = None) -> Dict[Cell, List[AdmissibleSequence]]:
    """All gradient paths from a critical k-cell, grouped by the critical (k-1)-cell reached."""
    poset = mf.poset
    cap = max_sequences() if cap is None else cap
    memo: Dict[Tuple[int, int, int], List[Tuple[Tuple[int, int, int], ...]]] = {}
    count = [0]

    def cont(pivot: int, chamber: int, prev: int):
        key = (pivot, chamber, prev)
        if key in memo:
            return memo[key]
        out = []
        for f in poset.down[pivot]:
            if f == prev:
                continue
            c = poset.compose(chamber, f)
            cell = (c, f)
            if mf.matched_from_below(cell):
                continue
            step = (f, c, pivot)
            if mf.is_critical(cell):
                out.append((step,))
            else:
                nxt = mf.match[cell][1]
                for tail in cont(nxt, c, f):
                    out.append((step,) + tail)
            if len(out) > cap:
                raise SequenceCapError(f"more than {cap} admissible sequences from {src}")
        memo[key] = out
        return out

    c0, f0 = src
    result: Dict[Cell, List[AdmissibleSequence]] = {}
    for path in cont(f0, c0, -1):
        count[0] += 1
        if count[0] > cap:
            raise SequenceCapError(f"more than {cap} admissible sequences from {src}")
        dst = (path[-1][1], path[-1][0])
        seq = AdmissibleSequence(src, dst, tuple(p[0] for p in path), tuple(p[1] for p in path),
                                 tuple(p[2] for p in path))
        result.setdefault(dst, []).append(seq)
    for v in result.values():
        v.sort(key=lambda s: (s.length, s.facets, s.chambers))
    return result


def sequence_sign(mf: MorseField, s: AdmissibleSequence) -> int:
    """(-1)^(l - b), checked against the ascent count of the facet list."""
    sign = -1 if (s.length - s.blocks) % 2 else 1
    order = mf.order
    alpha = sum(1 for a, b in zip(s.facets, s.facets[1:]) if order.less(a, b))
    eps = 1 if order.less(s.src[1], s.facets[0]) else 0
    alt = -1 if (alpha + eps) % 2 else 1
    if alt != sign:
        raise MorseAuditError(f"sign rules disagree on {s.facets}")
    return sign


def is_ordered(mf: MorseField, s: AdmissibleSequence) -> bool:
    for _, members in s.block_structure():
        body = members[:-1]
        if any(not mf.order.less(a, b) for a, b in zip(body, body[1:])):
            return False
    return True


@dataclass(frozen=True)
class CrossingVector:
    mu: Tuple[int, ...]
    eps_c: Tuple[int, ...]
    eps_d: Tuple[int, ...]

    def exponents(self, strict: bool = False) -> Tuple[int, ...]:
        return tuple(abelian_exponent(self, h, strict) for h in range(len(self.mu)))


def crossing_counts(g: Galleries, s: AdmissibleSequence) -> CrossingVector:
    poset = g.field.poset
    m = len(poset.arrangement.hyperplanes)
    mu = [0] * m
    chain = s.chamber_chain()
    for a, b in zip(chain, chain[1:]):
        for h in poset.separating(a, b):
            mu[h] += 1
    base = g.base
    sc, sd = poset.separating(base, chain[0]), poset.separating(base, chain[-1])
    return CrossingVector(tuple(mu), tuple(int(h in sc) for h in range(m)),
                          tuple(int(h in sd) for h in range(m)))


def abelian_exponent(cv: CrossingVector, h: int, strict: bool = True) -> int:
    """Floor of (mu - eps(C) + eps(D)) / 2; ``strict`` rejects values outside {0, 1}."""
    m = (cv.mu[h] - cv.eps_c[h] + cv.eps_d[h]) // 2
    if strict and m not in (0, 1):
        raise MorseAuditError(f"exponent {m} outside {{0, 1}} on hyperplane {h}")
    return m


def gallery_word(g: Galleries, s: AdmissibleSequence) -> List[Tuple[int, int]]:
    """Signed crossings of the loop Gamma(C)^-1 u(s) Gamma(D)."""
    word: List[Tuple[int, int]] = []
    back = list(reversed(g.tree_path(s.src[0])))
    word += [(h, -1) for h in g.crossings(back)]
    chain = s.chamber_chain()
    for a, b in zip(chain, chain[1:]):
        word += [(h, 1) for h in g.crossings(g.minimal_gallery(a, b))]
    word += [(h, 1) for h in g.crossings(g.tree_path(s.dst[0]))]
    return word


def winding(word: Sequence[Tuple[int, int]], m: int) -> Tuple[int, ...]:
    tot = [0] * m
    for h, e in word:
        tot[h] += e
    if any(x % 2 for x in tot):
        raise MorseAuditError("loop is not closed around some hyperplane")
    return tuple(x // 2 for x in tot)


def _first_lower(mf: MorseField, s: AdmissibleSequence) -> Optional[int]:
    fk = s.src[1]
    return next((f for f in s.facets if mf.order.less(f, fk)), None)


def lemma_cases(mf: MorseField, s: AdmissibleSequence, cv: CrossingVector) -> Dict[int, Tuple[str, Tuple[int, ...]]]:
    """Hyperplane -> (case label, admissible values of mu) wherever a crossing-count rule applies."""
    poset, order = mf.poset, mf.order
    c, fk = s.src
    zero = poset.facets[fk].zero_set
    first_low = order.less(s.facets[0], fk)
    low = _first_lower(mf, s)
    base_signs = poset.facets[mf.critical[0][0][0]].signs
    sep_cd = poset.separating(c, s.dst[0])
    out: Dict[int, Tuple[str, Tuple[int, ...]]] = {}
    for h in range(len(cv.mu)):
        e_c, e_d, in_f = cv.eps_c[h], cv.eps_d[h], h in zero
        if e_c and e_d:
            out[h] = ("1", (0,) if (not in_f or first_low) else (2,))
        elif e_d and h in sep_cd:
            out[h] = ("2", (1,))
        elif e_c and h in sep_cd:
            if not in_f or first_low:
                out[h] = ("3", (1,))
            else:
                x = poset.facets[low].signs[h] if low is not None else 0
                across = x != 0 and x != base_signs[h]
                out[h] = ("3", (3,) if across else (1,))
        elif not (e_c or e_d or h in sep_cd):
            out[h] = ("4", (0, 1, 2))
    return out


def mu_lemma_check(mf: MorseField, s: AdmissibleSequence, cv: CrossingVector) -> List[int]:
    """Hyperplanes where a crossing-count rule applies and is violated."""
    return [h for h, (_, want) in lemma_cases(mf, s, cv).items() if cv.mu[h] not in want]


def exponent_condition_holds(mf: MorseField, s: AdmissibleSequence, cv: CrossingVector, h: int) -> bool:
    """Necessary condition for m(s, H) = 1: H is raised through F^k with C beyond it,
    H separates C_0 from D only (crossing-count rule 2), or H separates none
    of C_0, C, D."""
    poset, order = mf.poset, mf.order
    c, fk = s.src
    sep_cd = h in poset.separating(c, s.dst[0])
    in_f = h in poset.facets[fk].zero_set
    raised = in_f and order.less(fk, s.facets[0])
    if cv.eps_c[h] and (sep_cd or cv.eps_d[h]) and raised:
        return True
    if cv.eps_d[h] and sep_cd and not cv.eps_c[h]:
        return True
    return not (cv.eps_c[h] or cv.eps_d[h] or sep_cd)


@dataclass
class EntryData:
    sequences: List[AdmissibleSequence]
    signs: List[int]
    exponents: List[Tuple[int, ...]]

    def value(self, nvars: int, keep: Optional[Sequence[int]] = None) -> Laurent:
        total = Laurent.zero(nvars)
        idx = range(len(self.sequences)) if keep is None else keep
        for i in idx:
            total = total + Laurent.monomial(self.exponents[i], self.signs[i])
        return total


def reduced_indices(mf: MorseField, entry: EntryData) -> List[int]:
    """Indices of Seq^0: drop every m-extensible sequence together with its m-extension."""
    order = mf.order
    seqs = entry.sequences
    index = {s.facets + s.chambers: i for i, s in enumerate(seqs)}
    by_facets: Dict[Tuple[int, ...], List[int]] = {}
    for i, s in enumerate(seqs):
        by_facets.setdefault(s.facets, []).append(i)

    def removals(i: int) -> List[Tuple[int, int]]:
        """(removed facet, j) such that dropping it from seqs[i] leaves seqs[j], same monomial."""
        s = seqs[i]
        out = []
        for p in range(s.length):
            fs = s.facets[:p] + s.facets[p + 1:]
            for j in by_facets.get(fs, ()):
                if entry.exponents[j] == entry.exponents[i]:
                    out.append((s.facets[p], j))
        return out

    ext: Dict[int, List[Tuple[int, int]]] = {}
    for i in range(len(seqs)):
        for f, j in removals(i):
            ext.setdefault(j, []).append((f, i))
    partner: Dict[int, int] = {}
    for j, options in ext.items():
        fmin = min((f for f, _ in options), key=order.position.__getitem__)
        for f, i in sorted(options, key=lambda t: seqs[t[1]].chambers):
            if f != fmin:
                continue
            rem = [g for g, _ in removals(i)]
            if min(rem, key=order.position.__getitem__) == fmin:
                partner[j] = i
                break
    extensible = set(partner)
    reducible = set(partner.values())
    if extensible & reducible:
        # a sequence both extends and reduces: pair greedily along the chain
        used = set()
        partner2 = {}
        for j in sorted(partner, key=lambda j: seqs[j].length):
            i = partner[j]
            if j in used or i in used:
                continue
            used.update((i, j))
            partner2[j] = i
        partner = partner2
    drop = set(partner) | set(partner.values())
    for j, i in partner.items():
        if entry.signs[j] == entry.signs[i]:
            raise MorseAuditError("an m-extension does not flip the sign")
    _ = index
    return [i for i in range(len(seqs)) if i not in drop]


@dataclass
class MorseComplex:
    field: MorseField
    nvars: int
    matrices: Dict[int, Matrix]  # k -> d_k, rows = critical (k-1)-cells, cols = critical k-cells
    entries: Dict[int, Dict[Tuple[int, int], EntryData]]
    mode: str = "full"
    audit: Dict[str, int] = field(default_factory=dict)

    @property
    def critical(self) -> List[List[Cell]]:
        return self.field.critical

    def d_squared_zero(self) -> bool:
        n = len(self.critical) - 1
        for k in range(2, n + 1):
            if not is_zero_matrix(matmul(self.matrices[k - 1], self.matrices[k], self.nvars)):
                return False
        return True

    def vanishes_at_one(self) -> bool:
        one = [Fraction(1)] * self.nvars
        return all(x.evaluate(one) == 0 for m in self.matrices.values() for row in m for x in row)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "critical": [[list(c) for c in cs] for cs in self.critical],
            "matrices": {
                str(k): [[x.to_json() for x in row] for row in m] for k, m in self.matrices.items()
            },
        }


def boundary_matrix(mf: MorseField, mode: str = "full", cap: Optional[int] = None,
                    audit: bool = True) -> MorseComplex:
    """Morse differentials d_1..d_n with Laurent entries; ``mode`` is full or reduced."""
    if mode not in ("full", "reduced"):
        raise ValueError("mode must be 'full' or 'reduced'")
    poset = mf.poset
    nvars = len(poset.arrangement.hyperplanes)
    n = poset.arrangement.dim
    g = Galleries(mf)
    stats = {"sequences": 0, "lemma_checked": 0, "lemma_violations": 0,
             "exponent_above_one": 0, "exponent_condition_violations": 0, "reduced_dropped": 0}
    if audit:
        for c in poset.chambers:
            path = g.tree_path(c)
            crossed = g.crossings(path)
            if len(set(crossed)) != len(crossed) or set(crossed) != set(poset.separating(c, g.base)):
                raise MorseAuditError(f"tree path of chamber {c} is not minimal")
    mats: Dict[int, Matrix] = {}
    entries: Dict[int, Dict[Tuple[int, int], EntryData]] = {}
    for k in range(1, n + 1):
        rows, cols = mf.critical[k - 1], mf.critical[k]
        row_idx = {c: i for i, c in enumerate(rows)}
        mat = zeros(len(rows), len(cols), nvars)
        entries[k] = {}
        for j, src in enumerate(cols):
            for dst, seqs in admissible_sequences(mf, src, cap).items():
                signs, exps = [], []
                for s in seqs:
                    signs.append(sequence_sign(mf, s))
                    cv = crossing_counts(g, s)
                    e = cv.exponents()
                    if audit:
                        if not is_ordered(mf, s):
                            raise MorseAuditError(f"sequence {s.facets} is not ordered")
                        if winding(gallery_word(g, s), nvars) != e:
                            raise MorseAuditError("loop winding disagrees with the exponent formula")
                        # crossing rules and exponent bound are recorded, not enforced: the traced path is authoritative
                        if mu_lemma_check(mf, s, cv):
                            stats["lemma_violations"] += 1
                        if any(x > 1 for x in e):
                            stats["exponent_above_one"] += 1
                        if any(x == 1 and not exponent_condition_holds(mf, s, cv, h) for h, x in enumerate(e)):
                            stats["exponent_condition_violations"] += 1
                        stats["lemma_checked"] += 1
                    exps.append(e)
                stats["sequences"] += len(seqs)
                data = EntryData(seqs, signs, exps)
                i = row_idx[dst]
                entries[k][(i, j)] = data
                if mode == "full":
                    mat[i][j] = data.value(nvars)
                else:
                    keep = reduced_indices(mf, data)
                    stats["reduced_dropped"] += len(seqs) - len(keep)
                    mat[i][j] = data.value(nvars, keep)
        mats[k] = mat
    return MorseComplex(mf, nvars, mats, entries, mode, stats)
