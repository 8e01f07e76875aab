"""Sparse multivariate polynomials with integer coefficients."""

from __future__ import annotations

import re
from math import gcd as igcd
from typing import Mapping, Sequence

Exps = tuple[int, ...]


class MPoly:
    """Polynomial over ZZ in a fixed tuple of variables.

    ``terms`` maps exponent vectors to nonzero integer coefficients.  Values
    are treated as immutable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Exps, int] | None = None, vars: Sequence[str] = ()):
        self.vars = tuple(vars)
        r = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != r:
                    raise ValueError("exponent vector has wrong arity")
                clean[e] = int(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------------

    @classmethod
    def const(cls, c: int, vars: Sequence[str]) -> "MPoly":
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls({tuple(e): 1}, vars)

    @classmethod
    def gens(cls, vars: Sequence[str]) -> list["MPoly"]:
        return [cls.var(v, vars) for v in vars]

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return MPoly.const(other, self.vars)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(t, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MPoly(t, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v: int | str) -> int:
        i = self._index(v)
        return max((e[i] for e in self.terms), default=-1)

    def _index(self, v: int | str) -> int:
        return self.vars.index(v) if isinstance(v, str) else v

    def support(self) -> list[Exps]:
        return sorted(self.terms)

    def used_vars(self) -> list[int]:
        return [i for i in range(self.arity) if any(e[i] for e in self.terms)]

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
        return g

    def leading_term(self) -> tuple[Exps, int]:
        """Leading term under graded lexicographic order."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def normalized(self) -> "MPoly":
        """Primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return MPoly({e: v // c for e, v in self.terms.items()}, self.vars)

    def coeffs_in(self, v: int | str) -> dict[int, "MPoly"]:
        """Coefficients as a polynomial in variable ``v`` (each free of ``v``)."""
        i = self._index(v)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: MPoly(t, self.vars) for k, t in out.items()}

    def lc_in(self, v: int | str) -> "MPoly":
        cs = self.coeffs_in(v)
        return cs[max(cs)]

    # -- transformations ---------------------------------------------------------------

    def derivative(self, v: int | str) -> "MPoly":
        i = self._index(v)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                t[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MPoly(t, self.vars)

    def substitute(self, assignment: Mapping[str | int, "int | MPoly"]) -> "MPoly":
        """Replace variables by integers or polynomials in the same variables."""
        idx = {self._index(k): v for k, v in assignment.items()}
        for v in idx.values():
            if isinstance(v, MPoly) and v.vars != self.vars:
                raise ValueError("substituted polynomial has wrong variables")
        out: dict[Exps, int] = {}
        result = MPoly({}, self.vars)
        pow_cache: dict[tuple[int, int], object] = {}

        def power(i, k):
            key = (i, k)
            if key not in pow_cache:
                pow_cache[key] = idx[i] ** k
            return pow_cache[key]

        for e, c in self.terms.items():
            scalar = c
            poly_factor = None
            rest = list(e)
            for i in idx:
                if e[i]:
                    val = power(i, e[i])
                    if isinstance(val, MPoly):
                        poly_factor = val if poly_factor is None else poly_factor * val
                    else:
                        scalar *= val
                rest[i] = 0
            if scalar == 0:
                continue
            rest = tuple(rest)
            if poly_factor is None:
                out[rest] = out.get(rest, 0) + scalar
            else:
                mono = MPoly({rest: scalar}, self.vars)
                result = result + mono * poly_factor
        return result + MPoly(out, self.vars)

    def evaluate(self, values: Sequence, one=1):
        """Evaluate at a point whose coordinates support ``+``, ``*`` and ``int *``."""
        pows: list[dict[int, object]] = [{} for _ in self.vars]

        def power(i, k):
            d = pows[i]
            if k not in d:
                d[k] = values[i] ** k if k > 1 else values[i]
            return d[k]

        total = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            term = c * one if term is None else term * c
            total = term if total is None else total + term
        return total if total is not None else 0 * one

    def reduce_mod(self, p: int) -> "MPoly":
        """Coefficients reduced to the symmetric range modulo ``p``."""
        t = {}
        for e, c in self.terms.items():
            r = c % p
            if r > p // 2:
                r -= p
            if r:
                t[e] = r
        return MPoly(t, self.vars)

    def rename(self, vars: Sequence[str]) -> "MPoly":
        if len(vars) != self.arity:
            raise ValueError("arity mismatch")
        return MPoly(self.terms, vars)

    def embed(self, vars: Sequence[str]) -> "MPoly":
        """Re-express in a larger (or reordered) variable tuple."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * len(vars)
            for i, k in zip(pos, e):
                e2[i] = k
            t[tuple(e2)] = c
        return MPoly(t, vars)

    def swap(self, i: int, j: int) -> "MPoly":
        t = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            t[tuple(e)] = c
        return MPoly(t, self.vars)

    def to_univariate(self, v: int | str) -> list[int]:
        """Dense integer coefficient list (low to high) of a polynomial in one variable."""
        i = self._index(v)
        if any(any(k for j, k in enumerate(e) if j != i) for e in self.terms):
            raise ValueError("polynomial involves other variables")
        d = self.degree_in(i)
        out = [0] * (d + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], v: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        i = vars.index(v)
        t = {}
        for k, c in enumerate(coeffs):
            e = [0] * len(vars)
            e[i] = k
            t[tuple(e)] = c
        return cls(t, vars)

    # -- division and gcd ----------------------------------------------------------

    def exact_div(self, d: "MPoly | int") -> "MPoly":
        d = self._lift(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q: dict[Exps, int] = {}
        r = dict(self.terms)
        ed = max(d.terms)
        cd = d.terms[ed]
        dterms = list(d.terms.items())
        while r:
            er = max(r)
            cr = r[er]
            shift = tuple(a - b for a, b in zip(er, ed))
            if min(shift) < 0 or cr % cd:
                raise ArithmeticError("inexact polynomial division")
            c = cr // cd
            q[shift] = c
            for e2, c2 in dterms:
                e = tuple(a + b for a, b in zip(shift, e2))
                v = r.get(e, 0) - c * c2
                if v:
                    r[e] = v
                else:
                    r.pop(e, None)
        return MPoly(q, self.vars)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    # -- formatting ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), str(self.terms[e])]
                      for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MPoly":
        return cls({tuple(e): int(c) for e, c in data["terms"]}, data["vars"])


# -- gcd ---------------------------------------------------------------------------

def _main_var(f: MPoly, g: MPoly) -> int:
    used = set(f.used_vars()) | set(g.used_vars())
    return max(used) if used else -1


def content_in(f: MPoly, v: int) -> MPoly:
    """Gcd of the coefficients of ``f`` viewed as a polynomial in variable ``v``."""
    g = MPoly({}, f.vars)
    for c in f.coeffs_in(v).values():
        g = gcd(g, c)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    return g


def _prem(a: MPoly, b: MPoly, v: int) -> MPoly:
    db = b.degree_in(v)
    lb = b.lc_in(v)
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.lc_in(v)
        e = [0] * r.arity
        e[v] = dr - db
        r = lb * r - lr * MPoly({tuple(e): 1}, r.vars) * b
    return r


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor over ZZ, normalized to a positive leading coefficient."""
    if f.is_zero():
        return _sign_fix(g)
    if g.is_zero():
        return _sign_fix(f)
    v = _main_var(f, g)
    if v < 0:
        return MPoly.const(igcd(f.constant_value(), g.constant_value()), f.vars)
    if f.degree_in(v) <= 0:
        return gcd(f, content_in(g, v))
    if g.degree_in(v) <= 0:
        return gcd(content_in(f, v), g)
    cf, cg = content_in(f, v), content_in(g, v)
    c = gcd(cf, cg)
    a, b = f.exact_div(cf), g.exact_div(cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while not b.is_zero() and b.degree_in(v) > 0:
        r = _prem(a, b, v)
        a, b = b, (r.exact_div(content_in(r, v)) if not r.is_zero() else r)
    h = a if b.is_zero() else MPoly.const(1, f.vars)
    if not h.is_constant():
        h = h.exact_div(content_in(h, v))
    return _sign_fix(c * h)


def _sign_fix(f: MPoly) -> MPoly:
    if f.is_zero():
        return f
    return -f if f.leading_term()[1] < 0 else f


def primitive_in(f: MPoly, v: int) -> MPoly:
    return f.exact_div(content_in(f, v)) if not f.is_zero() else f


def squarefree_part(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of ``f`` (up to sign and content)."""
    f = f.normalized()
    used = f.used_vars()
    if not used:
        return f
    # gcd(f, df/dv) also contains every factor free of v, so split off the content
    v = used[0]
    c = content_in(f, v)
    p = f.exact_div(c)
    p = p.exact_div(gcd(p, p.derivative(v)))
    return (squarefree_part(c) * p).normalized()


def strip_factor(f: MPoly, g: MPoly) -> MPoly:
    """Divide out of ``f`` every irreducible factor it shares with ``g``."""
    if g.is_constant():
        return f
    while True:
        d = gcd(f, g)
        if d.is_constant():
            return f
        f = f.exact_div(d)


# -- parsing -------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def parse(text: str, vars: Sequence[str] | None = None) -> MPoly:
    """Parse plain ASCII polynomial syntax: ``a^4*b^2 - 3*a + 1``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        tokens.append(("num", int(num)) if num else ("name", name) if name else ("op", "^" if op == "**" else op))
        pos = m.end()
    if vars is None:
        seen = {}
        for kind, val in tokens:
            if kind == "name":
                seen.setdefault(val, None)
        vars = tuple(seen)
    vars = tuple(vars)
    one = MPoly.const(1, vars)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take():
        nonlocal i
        if i >= len(tokens):
            raise ValueError("unexpected end of polynomial")
        i += 1
        return tokens[i - 1]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            if peek() == ("op", "*"):
                take()
                acc = acc * factor()
            elif peek()[0] in ("num", "name") or peek() == ("op", "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return one * val
        if kind == "name":
            if val not in vars:
                raise ValueError(f"unknown variable {val!r}")
            return MPoly.var(val, vars)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return e
        if (kind, val) == ("op", "-"):
            return -factor()
        raise ValueError("unexpected end of polynomial")

    result = expr()
    if i != len(tokens):
        raise ValueError("trailing input in polynomial")
    return result
