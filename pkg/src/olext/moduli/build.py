"""Exact construction of a moduli presentation from a plan.

Points and lines are homogeneous triples of integer polynomials in the
parameters.  Determined elements are cross products; every incidence of the
arrangement not used by the construction gives a constraint ``f`` and every
triple of lines that must not be concurrent gives a nondegeneracy polynomial
``g``.  Common factors of a triple are divided out as they appear (they cannot
vanish on a nondegenerate realization) and kept as extra ``g``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from ..arrangement import Arrangement
from ..poly.factor import rational_factor_list
from ..poly.mpoly import MPoly, gcd, parse
from .plan import ConstructionPlan, PlanError, Step, auto_plan, incident, is_point, separated

PARAM_NAMES = "abcdefghijkmnpqrstuvwxyz"

Triple = tuple[MPoly, MPoly, MPoly]


def cross(u: Triple, v: Triple) -> Triple:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u: Triple, v: Triple) -> MPoly:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u: Triple, v: Triple, w: Triple) -> MPoly:
    return dot(u, cross(v, w))


@dataclass(frozen=True)
class ProjElement:
    kind: str  # "point" or "line"
    coords: Triple

    def __post_init__(self):
        if all(c.is_zero() for c in self.coords):
            raise ValueError("homogeneous coordinates are identically zero")

    def same_as(self, other: "ProjElement") -> bool:
        """Equality up to a nonzero polynomial scale."""
        return self.kind == other.kind and all(c.is_zero() for c in cross(self.coords, other.coords))

    def evaluate(self, values, one=1) -> tuple:
        return tuple(c.evaluate(values, one) for c in self.coords)

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"


@dataclass
class ModuliPresentation:
    arrangement: Arrangement
    plan: ConstructionPlan
    params: tuple[str, ...]
    elements: dict[str, ProjElement]
    constraints: list[MPoly]
    nondegeneracy: list[MPoly]
    reduced: list[MPoly] | None = None
    notes: list[str] = field(default_factory=list)
    degenerate: str | None = None

    @property
    def infeasible(self) -> bool:
        return self.degenerate is not None or any(h.is_constant() for h in self.reduced or [])

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "constraints": [str(f) for f in self.constraints],
            "nondegeneracy": [str(g) for g in self.nondegeneracy],
            "reduced": [str(h) for h in self.reduced] if self.reduced is not None else None,
            "plan": self.plan.to_json(self.arrangement),
            "coordinates": {k: str(v) for k, v in self.elements.items()},
            "notes": list(self.notes),
            "degenerate": self.degenerate,
        }


def _content(t: Triple) -> MPoly:
    return gcd(gcd(t[0], t[1]), t[2])


def _strip(t: Triple, sink: list[MPoly]) -> Triple:
    c = _content(t)
    if c.is_zero():
        raise PlanError("construction collapses to the zero vector")
    if not c.is_constant():
        sink.append(c)
    elif abs(c.constant_value()) == 1:
        return t
    return tuple(x.exact_div(c) for x in t)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _parse_coords(text: str, vars: tuple[str, ...]) -> Triple:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise PlanError(f"coordinates must look like [x:y:z], got {text!r}")
    parts = body[1:-1].split(":")
    if len(parts) != 3:
        raise PlanError(f"coordinates need three entries, got {text!r}")
    try:
        return tuple(parse(p, vars) for p in parts)
    except ValueError as exc:
        raise PlanError(str(exc)) from None


def _param_names(plan: ConstructionPlan) -> tuple[list[str], dict[int, list[str]]]:
    explicit = []
    for s in plan.steps:
        if s.coords and s.op == "free":
            for name in _IDENT.findall(s.coords):
                if name not in explicit:
                    explicit.append(name)
    pool = [c for c in PARAM_NAMES if c not in explicit]
    names: list[str] = []
    per_step: dict[int, list[str]] = {}
    for i, s in enumerate(plan.steps):
        if s.op != "free":
            continue
        if s.coords:
            new = [n for n in _IDENT.findall(s.coords) if n not in names]
        else:
            new = [pool.pop(0) for _ in range(s.nparams)]
        names.extend(new)
        per_step[i] = new
    return names, per_step


class _Builder:
    def __init__(self, A: Arrangement, plan: ConstructionPlan, vars: tuple[str, ...]):
        self.A = A
        self.plan = plan
        self.vars = vars
        self.coords: dict[str, Triple] = {}
        self.order: list[str] = []
        self.content: list[MPoly] = []
        self.notes: list[str] = []

    def const(self, c):
        return MPoly.const(c, self.vars)

    def unit(self, i):
        return tuple(self.const(1 if j == i else 0) for j in range(3))

    def placed_incident(self, key):
        inc = incident(self.A, key)
        return [k for k in self.order if k in inc]

    def placed_free_of(self, key, kind_point: bool):
        inc = incident(self.A, key)
        return [k for k in self.order if k not in inc and is_point(self.A, k) == kind_point]

    def pencil(self, key: str, names: list[str]) -> Triple:
        """One-parameter family of points on a line (or lines through a point)."""
        A = self.A
        t = MPoly.var(names[0], self.vars)
        base = self.placed_incident(key)[0]
        # partners: placed elements of the same kind as base, not incident to key
        partners = self.placed_free_of(key, not is_point(A, key))
        for m1, m2 in combinations(partners, 2):
            if not separated(A, (base, m1, m2)):
                continue
            q1 = cross(self.coords[base], self.coords[m1])
            q2 = cross(self.coords[base], self.coords[m2])
            if all(c.is_zero() for c in cross(q1, q2)):
                continue
            q1 = _strip(q1, [])
            q2 = _strip(q2, [])
            return tuple(x + t * y for x, y in zip(q1, q2))
        self.notes.append(f"chart for {key} may miss the point at infinity")
        for i, j in combinations(range(3), 2):
            q1 = cross(self.coords[base], self.unit(i))
            q2 = cross(self.coords[base], self.unit(j))
            if not all(c.is_zero() for c in cross(q1, q2)):
                return tuple(x + t * y for x, y in zip(q1, q2))
        raise PlanError(f"cannot build a chart for {key}")

    def plane(self, key: str, names: list[str]) -> Triple:
        """Two-parameter affine chart avoiding a placed element that key must avoid."""
        A = self.A
        a, b = (MPoly.var(n, self.vars) for n in names)
        same = is_point(A, key)
        # an element M of the opposite kind not incident to key, with two placed
        # same-kind elements on it and a third off it
        for m in self.placed_free_of(key, not same):
            on = [k for k in self.order if k in incident(A, m) and is_point(A, k) == same]
            off = [k for k in self.order if k not in incident(A, m) and is_point(A, k) == same]
            for q1, q2 in combinations(on, 2):
                for q0 in off:
                    if incident(A, q0) & incident(A, q1) & incident(A, q2):
                        continue
                    Q0, Q1, Q2 = (self.coords[q] for q in (q0, q1, q2))
                    if det3(Q0, Q1, Q2).is_zero():
                        continue
                    return tuple(x + a * y + b * z for x, y, z in zip(Q0, Q1, Q2))
        self.notes.append(f"chart for {key} is the affine chart [a:b:1]")
        return (a, b, self.const(1))

    def place(self, s: Step, names: list[str]) -> Triple:
        if s.op == "basis" or (s.op == "free" and s.coords):
            return _parse_coords(s.coords, self.vars)
        if s.op in ("join", "meet"):
            return cross(self.coords[s.args[0]], self.coords[s.args[1]])
        if s.nparams == 1:
            return self.pencil(s.target, names)
        if s.nparams == 2:
            return self.plane(s.target, names)
        raise PlanError(f"free step for {s.target} needs 1 or 2 parameters")


def build(A: Arrangement, plan: ConstructionPlan | None = None) -> ModuliPresentation:
    """Parameterize the realizations of ``A`` following ``plan``."""
    plan = plan or auto_plan(A)
    names, per_step = _param_names(plan)
    vars = tuple(names)
    B = _Builder(A, plan, vars)
    constraints: list[MPoly] = []
    for i, s in enumerate(plan.steps):
        t = B.place(s, per_step.get(i, []))
        t = _strip(t, B.content)
        key = s.target
        for other in B.placed_incident(key):
            d = dot(t, B.coords[other])
            if not d.is_zero():
                constraints.append(d.normalized())
        B.coords[key] = t
        B.order.append(key)

    elements = {}
    for k in B.order:
        elements[k] = ProjElement("point" if is_point(A, k) else "line", B.coords[k])

    nondeg: list[MPoly] = []
    degenerate = None
    n = len(A)
    sets = A.line_sets
    for i, j, k in combinations(range(n), 3):
        if sets[i] & sets[j] & sets[k]:
            continue
        d = det3(*(B.coords[A.names[x]] for x in (i, j, k)))
        if d.is_zero():
            degenerate = f"lines {A.names[i]}, {A.names[j]}, {A.names[k]} are forced concurrent"
            continue
        if not d.is_constant():
            nondeg.append(d.normalized())
    nondeg.extend(c.normalized() for c in B.content)
    nondeg = _dedupe(nondeg)
    constraints = _dedupe(constraints)
    return ModuliPresentation(A, plan, vars, elements, constraints, nondeg,
                              notes=B.notes, degenerate=degenerate)


def _dedupe(polys: list[MPoly]) -> list[MPoly]:
    seen = set()
    out = []
    for p in polys:
        p = p.normalized()
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def reduce_constraint(f: MPoly, forbidden: list[MPoly]) -> MPoly:
    """Drop every irreducible factor of f that also divides a nondegeneracy polynomial."""
    keep = MPoly.const(1, f.vars)
    for phi in rational_factor_list(f):
        if not any(_may_divide(phi, g) and phi.divides(g) for g in forbidden):
            keep = keep * phi
    return keep.normalized()


def _may_divide(phi: MPoly, g: MPoly) -> bool:
    return not g.is_constant() and all(
        phi.degree_in(v) <= g.degree_in(v) for v in phi.used_vars())


def reduce(M: ModuliPresentation) -> ModuliPresentation:
    """Replace each constraint by its part not forced nonzero by the g's."""
    hs: list[MPoly] = []
    for f in M.constraints:
        h = reduce_constraint(f, M.nondegeneracy)
        hs.append(h)
    if any(h.is_constant() for h in hs):
        hs = [MPoly.const(1, M.params)]
    hs = _dedupe(hs)
    # V(h_i, h_j) = V(h_i) when h_i divides h_j
    keep = []
    for i, h in enumerate(hs):
        if any(j != i and o.divides(h) for j, o in enumerate(hs)):
            continue
        keep.append(h)
    M.reduced = keep
    return M


def build_reduced(A: Arrangement, plan: ConstructionPlan | None = None) -> ModuliPresentation:
    return reduce(build(A, plan))


# -- realizations -----------------------------------------------------------------

def realize(M: ModuliPresentation, values, one=1) -> dict[str, tuple]:
    return {k: e.evaluate(values, one) for k, e in M.elements.items()}


def _is_zero(x) -> bool:
    return x == 0 if not hasattr(x, "is_zero") else x.is_zero()


def check_realization(A: Arrangement, coords: dict[str, tuple]) -> list[str]:
    """All violated incidence or nondegeneracy conditions (empty when valid)."""
    problems = []

    def dot3(u, v):
        return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]

    def det(u, v, w):
        c = (v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0])
        return dot3(u, c)

    for k, v in coords.items():
        if all(_is_zero(x) for x in v):
            problems.append(f"{k} has zero coordinates")
    for p, ls in A.point_lines.items():
        for i in ls:
            if not _is_zero(dot3(coords[p], coords[A.names[i]])):
                problems.append(f"{p} not on {A.names[i]}")
    sets = A.line_sets
    for i, j, k in combinations(range(len(A)), 3):
        if sets[i] & sets[j] & sets[k]:
            continue
        if _is_zero(det(*(coords[A.names[x]] for x in (i, j, k)))):
            problems.append(f"{A.names[i]}, {A.names[j]}, {A.names[k]} concurrent")
    return problems
