"""Exact Newton polytopes for polynomials in at most three variables."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as igcd
from typing import Iterable, Sequence

import numpy as np

from .mpoly import MPoly

Point = tuple[int, ...]


@dataclass(frozen=True)
class NewtonPolytope:
    """Convex lattice polytope given by its extreme points (sorted)."""

    vertices: tuple[Point, ...]
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(map(tuple, self.vertices)))))

    def __len__(self):
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"arity": self.arity, "vertices": [list(v) for v in self.vertices]}


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(pts: Sequence[Point]) -> list[Point]:
    """Andrew's monotone chain; collinear boundary points are dropped."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1] + pts[-1:]


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _planar_hull(pts: Sequence[Point]) -> list[Point]:
    """Extreme points of coplanar (or collinear) points in 3-space."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    o = pts[0]
    normal = None
    for a in pts[1:]:
        for b in pts[1:]:
            n = _cross3(_sub(a, o), _sub(b, o))
            if any(n):
                normal = n
                break
        if normal:
            break
    if normal is None:
        # collinear: the two extreme points along the line
        d = _sub(pts[-1], o)
        key = lambda p: sum(x * y for x, y in zip(_sub(p, o), d))  # noqa: E731
        return sorted({min(pts, key=key), max(pts, key=key)})
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    proj = {tuple(p[i] for i in keep): p for p in pts}
    return sorted(proj[q] for q in _hull2(list(proj)))


def _hull3(pts: Sequence[Point]) -> list[Point]:
    pts = sorted(set(pts))
    if len(pts) <= 3:
        return _planar_hull(pts) if len(pts) == 3 else pts
    P = np.array(pts, dtype=np.int64)
    n = len(pts)
    o = P[0]
    rank = np.linalg.matrix_rank((P - o).astype(float))
    if rank <= 2:
        return _planar_hull(pts)
    faces: set[frozenset] = set()
    for i in range(n):
        for j in range(i + 1, n):
            ks = np.arange(j + 1, n)
            if not len(ks):
                continue
            u = P[j] - P[i]
            V = P[ks] - P[i]
            N = np.cross(u, V)
            nz = np.any(N != 0, axis=1)
            if not nz.any():
                continue
            N = N[nz]
            D = (P - P[i]) @ N.T
            support = np.all(D >= 0, axis=0) | np.all(D <= 0, axis=0)
            for col in np.nonzero(support)[0]:
                faces.add(frozenset(np.nonzero(D[:, col] == 0)[0].tolist()))
    verts: set[Point] = set()
    for face in faces:
        verts.update(_planar_hull([pts[k] for k in face]))
    return sorted(verts)


def hull_vertices(points: Iterable[Point], arity: int) -> list[Point]:
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    if arity == 0:
        return [()]
    if arity == 1:
        return sorted({min(pts), max(pts)})
    if arity == 2:
        return sorted(_hull2(pts))
    if arity == 3:
        return _hull3(pts)
    raise ValueError("Newton polytopes are supported for at most three variables")


def newton_polytope(f: MPoly) -> NewtonPolytope:
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    if f.arity > 3:
        raise ValueError("Newton polytopes are supported for at most three variables")
    return NewtonPolytope(tuple(hull_vertices(f.terms, f.arity)), f.arity)


def polytope_of_points(points: Iterable[Point], arity: int) -> NewtonPolytope:
    return NewtonPolytope(tuple(hull_vertices(points, arity)), arity)


def minkowski_sum(P: NewtonPolytope, Q: NewtonPolytope) -> NewtonPolytope:
    if P.arity != Q.arity:
        raise ValueError("arity mismatch")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices}
    return polytope_of_points(sums, P.arity)


def vertex_gcd(P: NewtonPolytope) -> int:
    g = 0
    for v in P.vertices:
        for x in v:
            g = igcd(g, x)
    return g


def gao_coprime_test(f: MPoly) -> bool:
    """True iff the coordinates of all hull vertices of P_f have gcd 1."""
    return vertex_gcd(newton_polytope(f)) == 1
