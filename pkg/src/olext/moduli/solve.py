"""Zero-dimensional solving for bivariate systems over QQ.

The first coordinate is eliminated with a resultant, each QQ-irreducible factor
of the resultant defines a number field, and the second coordinate is the root
of a gcd over that field.  When the gcd has degree above one (two solutions
share a first coordinate) the coordinates are sheared and the solve restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..poly.mpoly import MPoly, gcd
from ..poly.upoly import UPoly, primitive, rational_factors, resultant, sturm_real_roots
from .numberfield import NFElement, NumberField, kpoly_divmod, kpoly_gcd, kpoly_trim

MAX_SHEAR = 6


class NotZeroDimensional(ValueError):
    """The system has a positive-dimensional solution set."""


@dataclass
class PointOrbit:
    """The Galois orbit of one solution: all roots of ``field`` plugged into ``values``."""

    field: NumberField
    values: dict[str, NFElement]
    count: int
    real: int

    def to_json(self) -> dict:
        return {
            "minimal_polynomial": UPoly(self.field.q).format("x"),
            "values": {k: v.to_json() for k, v in self.values.items()},
            "count": self.count,
            "real": self.real,
        }


def _interpolate(xs: list[int], ys: list[int]) -> list[int]:
    """Newton interpolation; the result must have integer coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    while len(poly) > 1 and not poly[-1]:
        poly.pop()
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("resultant interpolation produced a non-integer")
    return [int(c) for c in poly]


def _slice(h: MPoly, u: int, v: int, u0: int, dv: int) -> list[int]:
    out = [0] * (dv + 1)
    vals = [0] * h.arity
    vals[u] = u0
    for e, c in h.terms.items():
        out[e[v]] += c * u0 ** e[u]
    return out


def bivariate_resultant(h1: MPoly, h2: MPoly, u: int, v: int) -> list[int]:
    """Res_v(h1, h2) as an integer polynomial in u (coefficients low to high)."""
    d1, d2 = h1.degree_in(v), h2.degree_in(v)
    if d1 == 0:
        return h1.to_univariate(u) if d2 > 0 else []
    if d2 == 0:
        return h2.to_univariate(u)
    bound = h1.degree_in(u) * d2 + h2.degree_in(u) * d1
    xs = list(range(bound + 1))
    ys = [resultant(_slice(h1, u, v, x, d1), _slice(h2, u, v, x, d2), d1, d2) for x in xs]
    return _interpolate(xs, ys)


def _in_field(h: MPoly, u: int, v: int, alpha: NFElement) -> list[NFElement]:
    """h(alpha, v) as a coefficient list over the field of alpha."""
    K = alpha.K
    d = h.degree_in(v)
    out = [K.zero for _ in range(d + 1)]
    pw = {}
    for e, c in h.terms.items():
        k = e[u]
        if k not in pw:
            pw[k] = alpha ** k
        out[e[v]] = out[e[v]] + pw[k] * c
    return kpoly_trim(out)


def eval_at(h: MPoly, values: dict[int, NFElement], K: NumberField) -> NFElement:
    vals = [values.get(i, K.zero) for i in range(h.arity)]
    return h.evaluate(vals, K.one)


def _shear(h: MPoly, u: int, v: int, s: int) -> MPoly:
    if s == 0:
        return h
    U = MPoly.var(h.vars[u], h.vars) + MPoly.var(h.vars[v], h.vars) * s
    return h.substitute({u: U})


def finite_points(hs: list[MPoly], gs: list[MPoly], u: int, v: int) -> list[PointOrbit]:
    """Solutions of hs = 0 in the (u, v) plane with every g nonzero, as Galois orbits.

    Raises :class:`NotZeroDimensional` if the h's share a curve.
    """
    hs = [h for h in hs if not h.is_zero()]
    if any(h.is_constant() for h in hs):
        return []
    for s in range(MAX_SHEAR + 1):
        out = _solve_sheared(hs, gs, u, v, s)
        if out is not None:
            return out
    raise ArithmeticError("could not separate solutions by shearing")


def _pick_pair(hs):
    for i, h1 in enumerate(hs):
        for h2 in hs[i + 1:]:
            if gcd(h1, h2).is_constant():
                return h1, h2
    return None


def _solve_sheared(hs, gs, u, v, s):
    H = [_shear(h, u, v, s) for h in hs]
    G = [_shear(g, u, v, s) for g in gs]
    if len(H) == 1 or all(h.degree_in(v) <= 0 for h in H):
        if all(h.degree_in(v) <= 0 for h in H) and any(not h.is_constant() for h in H):
            raise NotZeroDimensional("constraints do not involve the second coordinate")
        if len(H) == 1:
            raise NotZeroDimensional("a single constraint in two variables")
    pair = _pick_pair(H)
    if pair is None:
        raise NotZeroDimensional("constraints share a common factor")
    R = bivariate_resultant(pair[0], pair[1], u, v)
    if not R:
        raise NotZeroDimensional("resultant vanishes identically")
    if len(R) == 1:
        return []
    out = []
    seen = set()
    for q in rational_factors(primitive(R), max_degree=10 ** 6):
        if q.coeffs in seen:
            continue
        seen.add(q.coeffs)
        K = NumberField(q.coeffs)
        alpha = K.gen
        G_v: list[NFElement] = []
        for h in H:
            G_v = kpoly_gcd(G_v, _in_field(h, u, v, alpha)) if G_v else _monic(_in_field(h, u, v, alpha))
        G_v = _squarefree_k(G_v)
        if not G_v or len(G_v) == 1:
            continue
        if len(G_v) > 2:
            return None  # two solutions over one first coordinate: shear and retry
        beta = -G_v[0] / G_v[1]
        vals = {u: alpha, v: beta}
        if any(eval_at(g, vals, K).is_zero() for g in G):
            continue
        orig = {H[0].vars[u]: alpha + beta * s, H[0].vars[v]: beta}
        out.append(PointOrbit(K, orig, K.degree, sturm_real_roots(list(K.q))))
    return out


def _squarefree_k(p: list[NFElement]) -> list[NFElement]:
    if len(p) <= 2:
        return p
    dp = kpoly_trim([c * k for k, c in enumerate(p)][1:])
    g = kpoly_gcd(p, dp)
    if len(g) <= 1:
        return p
    return _monic(kpoly_divmod(p, g)[0])


def _monic(p: list[NFElement]) -> list[NFElement]:
    if not p:
        return p
    inv = p[-1].inverse()
    return [x * inv for x in p]


def univariate_points(hs: list[MPoly], gs: list[MPoly], u: int) -> list[PointOrbit]:
    """Solutions of univariate constraints in variable ``u`` avoiding every g."""
    from ..poly.upoly import zgcd
    G: list[int] = []
    for h in hs:
        c = h.to_univariate(u)
        G = zgcd(G, c) if G else primitive(c)
    if len(G) <= 1:
        return []
    out = []
    seen = set()
    for q in rational_factors(G, max_degree=10 ** 6):
        if q.coeffs in seen:
            continue
        seen.add(q.coeffs)
        K = NumberField(q.coeffs)
        vals = {u: K.gen}
        if any(eval_at(g, vals, K).is_zero() for g in gs):
            continue
        out.append(PointOrbit(K, {hs[0].vars[u]: K.gen}, K.degree, sturm_real_roots(list(K.q))))
    return out
