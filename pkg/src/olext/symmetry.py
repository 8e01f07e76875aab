"""Isomorphisms, automorphism groups, canonical forms and orbits.

Everything is driven by line maps: for points on two or more lines the image
is forced by the images of the lines, and points lying on a single line are
matched in the order they appear on it.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, Iterator, Sequence

from .arrangement import Arrangement, DoublePoint


@dataclass(frozen=True)
class ArrangementMap:
    point_map: dict
    line_map: tuple[int, ...]

    def to_json(self, src: Arrangement | None = None, dst: Arrangement | None = None) -> dict:
        if src is not None and dst is not None:
            lm = {src.names[i]: dst.names[j] for i, j in enumerate(self.line_map)}
        else:
            lm = {str(i): j for i, j in enumerate(self.line_map)}
        return {"point_map": dict(self.point_map), "line_map": lm}

    def __call__(self, d: DoublePoint) -> DoublePoint:
        i, j = self.line_map[d[0]], self.line_map[d[1]]
        return (i, j) if i < j else (j, i)

    def compose(self, other: "ArrangementMap") -> "ArrangementMap":
        """``self`` after ``other``."""
        pm = {p: self.point_map[q] for p, q in other.point_map.items()}
        lm = tuple(self.line_map[j] for j in other.line_map)
        return ArrangementMap(pm, lm)


def verify_map(A: Arrangement, B: Arrangement, phi: ArrangementMap) -> bool:
    """Independent check that ``phi`` is an isomorphism from A to B."""
    n = len(A)
    if len(B) != n or sorted(phi.line_map) != list(range(n)):
        return False
    pm = phi.point_map
    if set(pm) != set(A.points) or sorted(pm.values()) != sorted(B.points):
        return False
    for i, line in enumerate(A.lines):
        if {pm[p] for p in line} != B.line_sets[phi.line_map[i]]:
            return False
    for i, j in combinations(range(n), 2):
        p = A.meet(i, j)
        q = B.meet(phi.line_map[i], phi.line_map[j])
        if (p is None) != (q is None) or (p is not None and pm[p] != q):
            return False
    return True


# --- backtracking search ------------------------------------------------------

def _line_fingerprints(A: Arrangement) -> list[tuple]:
    mult = {p: len(ls) for p, ls in A.point_lines.items()}
    sets = A.line_sets
    out = []
    for i, line in enumerate(A.lines):
        n_doubles = sum(1 for j in range(len(A)) if j != i and not sets[i] & sets[j])
        out.append((len(line), tuple(sorted(mult[p] for p in line)), n_doubles))
    return out


def _search_order(A: Arrangement) -> list[int]:
    """Order lines so each new line meets as many earlier ones as possible."""
    n = len(A)
    sets = A.line_sets
    order = [max(range(n), key=lambda i: (len(A.lines[i]), -i))]
    rest = set(range(n)) - set(order)
    while rest:
        nxt = max(sorted(rest), key=lambda i: sum(1 for j in order if sets[i] & sets[j]))
        order.append(nxt)
        rest.remove(nxt)
    return order


def _line_maps(A: Arrangement, B: Arrangement) -> Iterator[tuple[int, ...]]:
    n = len(A)
    if n != len(B) or len(A.points) != len(B.points):
        return
    fa, fb = _line_fingerprints(A), _line_fingerprints(B)
    if sorted(fa) != sorted(fb):
        return
    order = _search_order(A)
    meetA = [[A.meet(i, j) for j in range(n)] for i in range(n)]
    meetB = [[B.meet(i, j) for j in range(n)] for i in range(n)]
    fmap: dict[int, int] = {}
    used = [False] * n
    pmap: dict[str, str] = {}
    pinv: dict[str, str] = {}

    def extend(depth: int):
        if depth == n:
            yield tuple(fmap[i] for i in range(n))
            return
        i = order[depth]
        for i2 in range(n):
            if used[i2] or fa[i] != fb[i2]:
                continue
            added = []
            ok = True
            for j in order[:depth]:
                p, q = meetA[i][j], meetB[i2][fmap[j]]
                if (p is None) != (q is None):
                    ok = False
                    break
                if p is None:
                    continue
                if p in pmap:
                    if pmap[p] != q:
                        ok = False
                        break
                elif q in pinv:
                    ok = False
                    break
                else:
                    pmap[p] = q
                    pinv[q] = p
                    added.append(p)
            if ok:
                fmap[i] = i2
                used[i2] = True
                yield from extend(depth + 1)
                used[i2] = False
                del fmap[i]
            for p in added:
                del pinv[pmap.pop(p)]

    yield from extend(0)


def _point_map(A: Arrangement, B: Arrangement, lm: Sequence[int]) -> dict:
    pm = {}
    for p, ls in A.point_lines.items():
        if len(ls) >= 2:
            pm[p] = B.meet(lm[ls[0]], lm[ls[1]])
    for i, line in enumerate(A.lines):
        lonelyA = [p for p in line if len(A.point_lines[p]) == 1]
        if lonelyA:
            lonelyB = [q for q in B.lines[lm[i]] if len(B.point_lines[q]) == 1]
            pm.update(zip(lonelyA, lonelyB))
    return pm


def find_isomorphism(A: Arrangement, B: Arrangement) -> ArrangementMap | None:
    for lm in _line_maps(A, B):
        return ArrangementMap(_point_map(A, B, lm), lm)
    return None


def brute_force_isomorphism(A: Arrangement, B: Arrangement) -> ArrangementMap | None:
    """Try every line bijection; only for small arrangements."""
    from itertools import permutations

    if len(A) != len(B):
        return None
    for lm in permutations(range(len(A))):
        phi = _try_line_map(A, B, lm)
        if phi is not None:
            return phi
    return None


def _try_line_map(A, B, lm):
    pm = {}
    for p, ls in A.point_lines.items():
        if len(ls) < 2:
            continue
        q = B.meet(lm[ls[0]], lm[ls[1]])
        if q is None:
            return None
        pm[p] = q
    try:
        phi = ArrangementMap({**_point_map(A, B, lm), **pm}, tuple(lm))
    except Exception:
        return None
    return phi if verify_map(A, B, phi) else None


# --- groups ---------------------------------------------------------------------

def _perm_mul(a: tuple, b: tuple) -> tuple:
    """a after b."""
    return tuple(a[x] for x in b)


def _perm_order(p: tuple) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        k, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        out = lcm(out, k)
    return out


def closure(gens: Iterable[tuple], n: int, limit: int = 10 ** 4) -> set:
    ident = tuple(range(n))
    gens = list(gens)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > limit:
                        raise ValueError("group closure exceeds limit")
        frontier = nxt
    return elems


@dataclass(frozen=True)
class PermGroup:
    """A group of automorphisms of one arrangement, stored by line permutations."""

    arrangement: Arrangement
    generators: tuple[ArrangementMap, ...]
    elements: tuple[ArrangementMap, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def element_order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(_perm_order(g.line_map) for g in self.elements).items()))

    @property
    def is_abelian(self) -> bool:
        gs = [g.line_map for g in self.generators]
        return all(_perm_mul(a, b) == _perm_mul(b, a) for a, b in combinations(gs, 2))

    def to_json(self) -> dict:
        A = self.arrangement
        return {
            "order": self.order,
            "histogram": {str(k): v for k, v in self.element_order_histogram.items()},
            "abelian": self.is_abelian,
            "generators": [g.to_json(A, A) for g in self.generators],
        }


def trivial_group(A: Arrangement) -> PermGroup:
    ident = ArrangementMap({p: p for p in A.points}, tuple(range(len(A))))
    return PermGroup(A, (), (ident,))


def automorphism_group(A: Arrangement) -> PermGroup:
    perms = sorted(_line_maps(A, A))
    elements = tuple(ArrangementMap(_point_map(A, A, lm), lm) for lm in perms)
    n = len(A)
    gens: list[tuple] = []
    span = {tuple(range(n))}
    for lm in perms:
        if lm not in span:
            gens.append(lm)
            span = closure(gens, n)
    by_perm = {g.line_map: g for g in elements}
    return PermGroup(A, tuple(by_perm[g] for g in gens), elements)


def orbit_representatives(G: PermGroup, S: Iterable[frozenset],
                          key: Callable | None = None) -> list[frozenset]:
    """One representative (the least under ``key``) per orbit of G on S."""
    key = key or (lambda L: tuple(sorted(L)))
    pool = {frozenset(L) for L in S}
    seen: set = set()
    reps = []
    for L in sorted(pool, key=key):
        if L in seen:
            continue
        orbit = set()
        for g in G.elements:
            img = frozenset(g(d) for d in L)
            if img not in pool:
                raise ValueError("group does not stabilise the given set of extension lines")
            orbit.add(img)
        seen |= orbit
        reps.append(min(orbit, key=key))
    return sorted(reps, key=key)


# --- canonical form ---------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __str__(self):
        return self.hex()


def _incidence(A: Arrangement) -> list[tuple[int, ...]]:
    return [ls for ls in A.point_lines.values()]


def _refine(colors: list[int], pts: list[tuple[int, ...]], on_line: list[list[int]]) -> list[int]:
    """Colour refinement on the line/point incidence graph; colours stay canonical."""
    n_classes = len(set(colors))
    while True:
        pcol = [tuple(sorted(colors[i] for i in P)) for P in pts]
        sig = [(colors[i], tuple(sorted(pcol[k] for k in on_line[i]))) for i in range(len(colors))]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        colors = [ranks[s] for s in sig]
        if len(ranks) == n_classes:
            return colors
        n_classes = len(ranks)


def canonical_labeling(A: Arrangement) -> tuple[tuple, tuple[int, ...]]:
    """Return (certificate, line order) minimising the certificate over the search tree."""
    n = len(A)
    pts = _incidence(A)
    on_line = [[] for _ in range(n)]
    for k, P in enumerate(pts):
        for i in P:
            on_line[i].append(k)
    best: list = [None, None]

    def cert(colors):
        return (n, tuple(sorted(tuple(sorted(colors[i] for i in P)) for P in pts)))

    def visit(colors):
        colors = _refine(colors, pts, on_line)
        counts = Counter(colors)
        if len(counts) == n:
            c = cert(colors)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, tuple(colors)
            return
        target = min(c for c, m in counts.items() if m > 1)
        for x in range(n):
            if colors[x] == target:
                nxt = [2 * c for c in colors]
                nxt[x] -= 1
                visit(nxt)

    visit([0] * n)
    return best[0], best[1]


def canonical_form(A: Arrangement) -> CanonicalForm:
    c, _ = canonical_labeling(A)
    n, pts = c
    text = f"{n}|" + "|".join(".".join(map(str, P)) for P in pts)
    return CanonicalForm(text.encode())


def canonical_arrangement(A: Arrangement) -> Arrangement:
    """Relabel A into its canonical line order with points named by position."""
    _, colors = canonical_labeling(A)
    rank = {c: r for r, c in enumerate(sorted(colors))}
    order = [rank[c] for c in colors]
    keys = sorted(A.point_lines, key=lambda p: sorted(order[i] for i in A.point_lines[p]))
    names = {p: str(k + 1) for k, p in enumerate(keys)}
    B = A.relabel(names, order)
    return Arrangement(tuple(tuple(sorted(l, key=int)) for l in B.lines), B.names)


def dumps_map(phi: ArrangementMap, A: Arrangement | None = None, B: Arrangement | None = None) -> str:
    return json.dumps(phi.to_json(A, B), sort_keys=True)
