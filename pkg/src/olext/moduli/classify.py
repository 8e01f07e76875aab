"""Classification of a reduced moduli presentation.

The pipeline:

1. constant constraints or forced concurrencies give ``Empty``;
2. constraints linear in a variable whose coefficient cannot vanish on the
   moduli space are solved for that variable (a regular isomorphism);
3. what remains is dispatched on (constraints, variables): no constraint is an
   open set of affine space, one constraint is a hypersurface whose QQ-factors
   are certified absolutely irreducible or split over a real or imaginary
   quadratic field, and two constraints in two variables (or one in one) are
   solved exactly over number fields.

Anything outside these shapes is ``Unknown`` with a reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import sympy

from ..arrangement import Arrangement
from ..config import DEFAULT, Settings
from ..poly.factor import from_sympy, rational_factor_list, to_sympy
from ..poly.irreducible import absolutely_irreducible
from ..poly.mpoly import MPoly, gcd
from ..poly.polytope import vertex_gcd
from .build import (ModuliPresentation, build_reduced, check_realization, reduce, realize,
                    reduce_constraint)
from .numberfield import NumberField
from .plan import ConstructionPlan, PlanError, plan_candidates
from .solve import NotZeroDimensional, PointOrbit, eval_at, finite_points, univariate_points

TRIAL_D = DEFAULT.trial_d
WITNESS_VALUES = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7, 11, 13)


# -- component descriptors and the conjugation quotient ------------------------------

@dataclass(frozen=True)
class Component:
    """A QQ-irreducible piece of the moduli space.

    ``field`` is 1 for a piece that is absolutely irreducible over QQ, or the
    square-free ``d`` when the piece splits into two conjugate components over
    QQ(sqrt d).  Finite pieces carry ``points`` and ``real`` instead.
    """

    poly: str = ""
    field: int = 1
    points: int = 0
    real: int = 0

    @property
    def size(self) -> int:
        """Number of irreducible components over C."""
        if self.points:
            return self.points
        return 1 if self.field == 1 else 2

    def conjugation(self) -> list[int]:
        """Local index of the complex conjugate of each component."""
        if self.points:
            # real points first, then non-real points in conjugate pairs
            out = list(range(self.real))
            for i in range(self.real, self.points, 2):
                out += [i + 1, i]
            return out
        if self.field < 0:
            return [1, 0]
        return list(range(self.size))

    def to_json(self) -> dict:
        d = {"over_C": self.size}
        if self.points:
            d.update(points=self.points, real=self.real)
        else:
            d.update(poly=self.poly, field="Q" if self.field == 1 else f"Q(sqrt({self.field}))")
        return d


def conjugation_count(components: Sequence[Component],
                      merges: Sequence[tuple[tuple[int, int], tuple[int, int]]] = ()) -> int:
    """Classes of components modulo complex conjugation and Euclidean merging.

    ``merges`` lists pairs ``((i, s), (j, t))``: component ``s`` of descriptor
    ``i`` meets component ``t`` of descriptor ``j`` at a nondegenerate point.
    """
    offset = []
    n = 0
    for c in components:
        if c.points and (c.points - c.real) % 2:
            raise ValueError("non-real points must come in conjugate pairs")
        offset.append(n)
        n += c.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for c, o in zip(components, offset):
        for s, t in enumerate(c.conjugation()):
            union(o + s, o + t)
    for (i, s), (j, t) in merges:
        union(offset[i] + s, offset[j] + t)
    return len({find(x) for x in range(n)})


# -- classification result ----------------------------------------------------------

@dataclass
class Classification:
    verdict: str  # Empty | Irreducible | Reducible | FinitePoints | Unknown
    dim: int | None = None
    over_C: int | None = None
    mod_conjugation: int | None = None
    reason: str = ""
    components: list[Component] = field(default_factory=list)
    witness: dict | None = None
    presentation: ModuliPresentation | None = field(default=None, repr=False)

    def __str__(self):
        if self.verdict == "Irreducible":
            return f"Irreducible({self.dim})"
        if self.verdict == "Reducible":
            return f"Reducible({self.over_C}, {self.mod_conjugation}, dim {self.dim})"
        if self.verdict == "FinitePoints":
            return f"FinitePoints({self.over_C}, {self.mod_conjugation})"
        if self.verdict == "Unknown":
            return f"Unknown({self.reason})"
        return self.verdict

    @property
    def counts(self) -> tuple[int, int] | None:
        """The pair (|M|, |M^C|) as tabulated, or None when not determined."""
        if self.verdict == "Empty":
            return (0, 0)
        if self.verdict == "Irreducible":
            return (1, 1)
        if self.over_C is None:
            return None
        return (self.over_C, self.mod_conjugation)

    def to_json(self) -> dict:
        verdict = {"kind": self.verdict, "text": str(self)}
        if self.dim is not None:
            verdict["dim"] = self.dim
        if self.over_C is not None:
            verdict["over_C"] = self.over_C
            verdict["mod_conjugation"] = self.mod_conjugation
        if self.reason:
            verdict["reason"] = self.reason
        out = self.presentation.to_json() if self.presentation else {}
        out["verdict"] = verdict
        out["components"] = [c.to_json() for c in self.components]
        out["witness"] = self.witness
        return out


def _unknown(reason: str, M=None) -> Classification:
    return Classification("Unknown", reason=reason, presentation=M)


# -- linear elimination --------------------------------------------------------------

@dataclass
class _State:
    vars: tuple[str, ...]
    active: list[int]
    hs: list[MPoly]
    gs: list[MPoly]
    solved: list[tuple[int, MPoly, MPoly]] = field(default_factory=list)  # v = -c0 / c1
    settings: Settings = DEFAULT


def _forced_nonzero(c: MPoly, gs: list[MPoly]) -> bool:
    """Every factor of c divides some g, so c cannot vanish on the moduli space."""
    if c.is_constant():
        return not c.is_zero()
    return reduce_constraint(c, gs).is_constant()


def _homogenize_sub(p: MPoly, v: int, c1: MPoly, c0: MPoly) -> MPoly:
    """c1^deg_v(p) * p(v = -c0/c1)."""
    d = p.degree_in(v)
    if d <= 0:
        return p
    out = MPoly({}, p.vars)
    for k, coeff in p.coeffs_in(v).items():
        out = out + coeff * (-c0) ** k * c1 ** (d - k)
    return out


def _clean(h: MPoly, gs: list[MPoly]) -> MPoly:
    if h.is_zero() or h.is_constant():
        return h
    return reduce_constraint(h, gs)


def _eliminate(st: _State) -> _State:
    while True:
        best = None
        for hi, h in enumerate(st.hs):
            for v in st.active:
                if h.degree_in(v) != 1:
                    continue
                cs = h.coeffs_in(v)
                c1, c0 = cs[1], cs.get(0, MPoly({}, h.vars))
                if not gcd(c1, c0).is_constant() or not _forced_nonzero(c1, st.gs):
                    continue
                key = (not c1.is_constant(), len(c1.terms) + len(c0.terms), hi, v)
                if best is None or key < best[0]:
                    best = (key, hi, v, c1, c0)
        if best is None:
            return st
        _, hi, v, c1, c0 = best
        rest = [h for i, h in enumerate(st.hs) if i != hi]
        gs = [_homogenize_sub(g, v, c1, c0) for g in st.gs]
        if not c1.is_constant():
            gs.append(c1.normalized())
        gs = [g.normalized() for g in gs if not g.is_constant()]
        if any(g.is_zero() for g in gs):
            # a nondegeneracy condition vanishes identically after solving
            st.hs = [MPoly.const(1, st.vars)]
            return st
        hs = []
        for h in rest:
            h2 = _clean(_homogenize_sub(h, v, c1, c0), gs)
            if h2.is_zero():
                continue
            hs.append(h2)
        st.solved.append((v, c1, c0))
        st.active = [x for x in st.active if x != v]
        st.gs = gs
        st.hs = _dedupe_divisible(hs)
        if any(h.is_constant() for h in st.hs):
            return st


def _dedupe_divisible(hs):
    out = []
    for h in hs:
        if h not in out:
            out.append(h)
    return [h for i, h in enumerate(out)
            if not any(j != i and o.divides(h) for j, o in enumerate(out))]


# -- sympy bridge --------------------------------------------------------------------

def _squarefree_int(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def _poly_sqrt(P: MPoly) -> tuple[int, MPoly] | None:
    """Write P = d * s^2 with d a square-free integer, if possible."""
    gens = sympy.symbols(P.vars)
    coeff, fl = sympy.factor_list(to_sympy(P, gens).as_expr(), *gens)
    s = MPoly.const(1, P.vars)
    for g, mult in fl:
        if mult % 2:
            return None
        s = s * from_sympy(sympy.Poly(g, *gens), P.vars) ** (mult // 2)
    coeff = sympy.Rational(coeff)
    # coeff = num/den; d * r^2 = coeff with r rational
    n = int(coeff.p) * int(coeff.q)
    d = _squarefree_int(n)
    r2 = sympy.Rational(coeff) / d
    r = sympy.sqrt(r2)
    if not r.is_Rational:
        return None
    return d, s


@dataclass
class _Split:
    d: int
    var: int
    lin: MPoly   # 2 A v + B
    s: MPoly     # discriminant = d * (r s)^2


def quadratic_split(f: MPoly) -> _Split | None:
    """Split f over QQ(sqrt d) as a quadratic in one of its variables, if possible."""
    cands = sorted((v for v in f.used_vars() if f.degree_in(v) == 2),
                   key=lambda v: (len(f.coeffs_in(v)[2].terms), v))
    for v in cands:
        cs = f.coeffs_in(v)
        A, B, C = cs[2], cs.get(1, MPoly({}, f.vars)), cs.get(0, MPoly({}, f.vars))
        disc = B * B - A * C * 4
        if disc.is_zero():
            continue
        sq = _poly_sqrt(disc)
        if sq is None:
            continue
        d, s = sq
        if d == 1:
            continue
        return _Split(d, v, MPoly.var(f.vars[v], f.vars) * A * 2 + B, s)
    return None


def _extension_split(f: MPoly, trial=TRIAL_D) -> tuple[int, list] | None:
    """Fallback: sympy factorization over QQ(sqrt d) for small d."""
    gens = sympy.symbols(f.vars)
    expr = to_sympy(f, gens).as_expr()
    for d in trial:
        try:
            _, fl = sympy.factor_list(expr, *gens, extension=sympy.sqrt(d))
        except (NotImplementedError, sympy.PolificationFailed):
            continue
        facs = [g for g, _ in fl if sympy.Poly(g, *gens).total_degree() > 0]
        if len(facs) > 1:
            return d, facs
    return None


def _absolutely_irreducible_over(g, gens) -> bool:
    """g irreducible over its coefficient field; certify absolute irreducibility."""
    P = sympy.Poly(g, *gens)
    if any(P.degree(x) == 1 for x in gens):
        return True
    pts = [tuple(int(k) for k in e) for e in P.as_dict()]
    from ..poly.polytope import polytope_of_points
    return vertex_gcd(polytope_of_points(pts, len(gens))) == 1


def quadric_rank(f: MPoly) -> int:
    """Rank of the symmetric matrix of the homogenized quadric f.

    A quadric splits into two planes over C exactly when this rank is at most 2.
    """
    n = f.arity
    M = sympy.zeros(n + 1, n + 1)
    for e, c in f.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        idx += [n] * (2 - len(idx))
        i, j = idx
        if i == j:
            M[i, i] += c
        else:
            M[i, j] += sympy.Rational(c, 2)
            M[j, i] += sympy.Rational(c, 2)
    return M.rank()


def certify_factor(f: MPoly, settings: Settings = DEFAULT) -> tuple[int, _Split | None] | None:
    """Field of definition of the absolute components of a QQ-irreducible f.

    Returns (1, None) for an absolutely irreducible f, (d, split) when f is a
    conjugate pair over QQ(sqrt d), or None when neither can be certified.
    """
    if any(f.degree_in(v) == 1 for v in f.used_vars()):
        # irreducible over QQ and of degree one in v: Galois conjugate factors
        # would all share that degree, so there is just one
        return 1, None
    if f.degree() == 2 and quadric_rank(f) >= 3:
        return 1, None
    if len(f.used_vars()) > 1 and absolutely_irreducible(f, settings.primes, settings.values).certified:
        return 1, None
    sp = quadratic_split(f)
    if sp is not None and sp.d in settings.trial_d:
        return sp.d, sp
    ext = _extension_split(f, settings.trial_d)
    if ext is not None:
        d, facs = ext
        gens = sympy.symbols(f.vars)
        if len(facs) == 2 and all(_absolutely_irreducible_over(g, gens) for g in facs):
            return d, None
    return None


# -- witnesses -----------------------------------------------------------------------

def _back_substitute(st: _State, values: dict[int, object], K: NumberField) -> dict[int, object]:
    vals = dict(values)
    for v, c1, c0 in reversed(st.solved):
        num = eval_at(c0, vals, K)
        den = eval_at(c1, vals, K)
        vals[v] = -num / den
    return vals


def _validate(M: ModuliPresentation, st: _State, values: dict[int, object], K: NumberField):
    try:
        vals = _back_substitute(st, values, K)
    except ZeroDivisionError:
        return None
    point = [vals.get(i, K.zero) for i in range(len(st.vars))]
    coords = realize(M, point, K.one)
    problems = check_realization(M.arrangement, coords)
    if problems:
        return None
    return {
        "field": None if K.degree == 1 else "Q[x]/(" + _upoly_text(K) + ")",
        "params": {st.vars[i]: point[i].to_json() for i in range(len(point))},
        "valid": True,
    }


def _upoly_text(K: NumberField) -> str:
    from ..poly.upoly import UPoly
    return UPoly(K.q).format("x")


def _witness_open(M, st) -> dict | None:
    K = NumberField([0, 1])  # QQ
    for combo in product(WITNESS_VALUES, repeat=len(st.active)):
        vals = {v: K(x) for v, x in zip(st.active, combo)}
        if any(eval_at(g, vals, K).is_zero() for g in st.gs):
            continue
        w = _validate(M, st, vals, K)
        if w:
            return w
    return None


def _witness_on(M, st, h: MPoly) -> dict | None:
    """A point on V(h) in a number field, fixing all but one active variable."""
    from ..poly.upoly import rational_factors
    for keep in st.active:
        if h.degree_in(keep) <= 0:
            continue
        others = [v for v in st.active if v != keep]
        for combo in product(WITNESS_VALUES[:9], repeat=len(others)):
            hs = h.substitute({v: x for v, x in zip(others, combo)})
            if hs.degree_in(keep) <= 0:
                continue
            for q in rational_factors(hs.to_univariate(keep), max_degree=10 ** 6):
                K = NumberField(q.coeffs)
                vals = {v: K(x) for v, x in zip(others, combo)}
                vals[keep] = K.gen
                if any(eval_at(g, vals, K).is_zero() for g in st.gs):
                    continue
                w = _validate(M, st, vals, K)
                if w:
                    return w
    return None


def _witness_points(M, st, orbit: PointOrbit) -> dict | None:
    vals = {st.vars.index(k): v for k, v in orbit.values.items()}
    return _validate(M, st, vals, orbit.field)


# -- the classifier ------------------------------------------------------------------

def classify(M: ModuliPresentation, settings: Settings = DEFAULT) -> Classification:
    """Classify the moduli space presented by ``M`` (reduced if necessary)."""
    if M.reduced is None:
        M = reduce(M)
    if M.degenerate:
        return _finish(Classification("Empty", reason=M.degenerate), M)
    if any(h.is_constant() for h in M.reduced):
        return _finish(Classification("Empty", reason="a constraint is a nonzero constant"), M)
    vars = M.params
    st = _State(vars, list(range(len(vars))), list(M.reduced), list(M.nondegeneracy),
                settings=settings)
    st = _eliminate(st)
    if any(h.is_constant() for h in st.hs):
        return _finish(Classification("Empty", reason="constraints are inconsistent"), M)
    try:
        out = _dispatch(M, st)
    except NotZeroDimensional as exc:
        out = _unknown(f"dependent constraints ({exc})")
    except ValueError as exc:
        out = _unknown(str(exc))
    return _finish(out, M)


def _finish(c: Classification, M) -> Classification:
    c.presentation = M
    if c.verdict not in ("Unknown",) and M.notes:
        return _unknown("chart may miss realizations: " + "; ".join(M.notes), M)
    return c


def _dispatch(M, st: _State) -> Classification:
    m, r = len(st.hs), len(st.active)
    if m == 0:
        w = _witness_open(M, st)
        if w is None:
            return _unknown(f"no witness found on an open subset of dimension {r}")
        return Classification("Irreducible", dim=r, over_C=1, mod_conjugation=1,
                              components=[Component(field=1)], witness=w,
                              reason="open subset of affine space" if r else "a single point")
    used = sorted({v for h in st.hs for v in h.used_vars()})
    if len(used) == 1 and len(st.hs) >= 1 and r >= 1:
        if r > 1:
            return _hypersurface(M, st) if m == 1 else _unknown("univariate constraint with free parameters")
        return _finite(M, st, univariate_points(st.hs, st.gs, used[0]))
    if m == 1:
        return _hypersurface(M, st)
    if r == 2 and len(used) == 2:
        u, v = used
        return _finite(M, st, finite_points(st.hs, st.gs, u, v))
    return _unknown(f"{m} constraints in {r} parameters after elimination")


def _finite(M, st, orbits: list[PointOrbit]) -> Classification:
    if not orbits:
        return Classification("Empty", reason="every solution is degenerate")
    comps = [Component(points=o.count, real=o.real) for o in orbits]
    n = sum(o.count for o in orbits)
    k = conjugation_count(comps)
    w = None
    for o in orbits:
        w = _witness_points(M, st, o)
        if w:
            break
    if w is None:
        return _unknown("solutions found but none validated as a realization")
    if n == 1:
        return Classification("Irreducible", dim=0, over_C=1, mod_conjugation=1,
                              components=comps, witness=w)
    return Classification("FinitePoints", dim=0, over_C=n, mod_conjugation=k,
                          components=comps, witness=w)


def _hypersurface(M, st) -> Classification:
    h = st.hs[0]
    r = len(st.active)
    dim = r - 1
    factors = rational_factor_list(h)
    comps: list[Component] = []
    splits: list[_Split | None] = []
    for f in factors:
        cert = certify_factor(f, st.settings)
        if cert is None:
            return _unknown(f"could not certify the components of {f}")
        d, sp = cert
        comps.append(Component(poly=str(f), field=d))
        splits.append(sp)
    n = sum(c.size for c in comps)
    witness = None
    for f in factors:
        witness = _witness_on(M, st, f)
        if witness:
            break
    if witness is None:
        return _unknown("no realization witness found on the constraint hypersurface")
    if n == 1:
        return Classification("Irreducible", dim=dim, over_C=1, mod_conjugation=1,
                              components=comps, witness=witness)
    k = conjugation_count(comps)
    if k > 1:
        merges = _merges(st, factors, comps, splits)
        if merges is None:
            return _unknown("intersections of components could not be decided",)
        k = conjugation_count(comps, merges)
    return Classification("Reducible", dim=dim, over_C=n, mod_conjugation=k,
                          components=comps, witness=witness)


def _merges(st, factors, comps, splits):
    """Nondegenerate intersection points between components (plane curves only)."""
    if len(st.active) != 2:
        return None
    u, v = st.active
    merges = []
    for i, (f, c, sp) in enumerate(zip(factors, comps, splits)):
        if c.field != 1:
            if sp is None:
                return None
            if sp.s.is_constant():
                continue
            try:
                pts = finite_points([f, sp.lin, sp.s], st.gs, u, v)
            except NotZeroDimensional:
                return None
            if pts:
                merges.append(((i, 0), (i, 1)))
    for i, j in combinations(range(len(factors)), 2):
        try:
            pts = finite_points([factors[i], factors[j]], st.gs, u, v)
        except NotZeroDimensional:
            return None
        if not pts:
            continue
        split_i, split_j = comps[i].field != 1, comps[j].field != 1
        if split_i and split_j:
            return None
        # a Galois orbit of intersection points hits both conjugates of a split
        # factor, so it links every component of the two factors
        for s in range(comps[i].size):
            for t in range(comps[j].size):
                merges.append(((i, s), (j, t)))
    return merges


# -- plans -------------------------------------------------------------------------

def classify_arrangement(A: Arrangement, plan: ConstructionPlan | None = None,
                         attempts: int = 6, settings: Settings = DEFAULT) -> Classification:
    """Classify A with a given plan, or with automatic plans until one is decisive."""
    if plan is not None:
        return classify(build_reduced(A, plan), settings)
    first = None
    for cand in plan_candidates(A, limit=attempts):
        try:
            c = classify(build_reduced(A, cand), settings)
        except PlanError as exc:
            c = _unknown(str(exc))
        if c.verdict != "Unknown":
            return c
        first = first or c
    return first or _unknown("no plan could be built")
