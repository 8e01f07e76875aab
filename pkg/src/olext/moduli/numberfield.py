"""Arithmetic in simple algebraic extensions QQ[x]/(q) with q irreducible."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Sequence

from ..poly.upoly import primitive, sturm_real_roots


class NumberField:
    """QQ[x]/(q).  Elements are integer vectors over a common positive denominator."""

    def __init__(self, q: Sequence[int], name: str = "alpha"):
        q = primitive(q)
        if len(q) < 2:
            raise ValueError("defining polynomial must have positive degree")
        self.q = tuple(int(c) for c in q)
        self.degree = n = len(q) - 1
        self.name = name
        # x^k mod q for n <= k <= 2n - 2, all over one denominator
        lc = Fraction(q[-1])
        monic = [Fraction(c) / lc for c in q]
        rows = []
        cur = [Fraction(0)] * n
        cur[n - 1] = Fraction(1)  # x^(n-1)
        for _ in range(n - 1):
            top = cur[n - 1]
            cur = [Fraction(0)] + cur[:n - 1]
            if top:
                cur = [cur[i] - top * monic[i] for i in range(n)]
            rows.append(cur)
        den = 1
        for r in rows:
            for c in r:
                den = den * c.denominator // igcd(den, c.denominator)
        self._den = den
        self._rows = [[int(c * den) for c in r] for r in rows]

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __call__(self, c) -> "NFElement":
        if isinstance(c, NFElement):
            return c
        c = Fraction(c)
        return NFElement._make(self, [c.numerator], c.denominator)

    @property
    def gen(self) -> "NFElement":
        if self.degree == 1:
            return NFElement._make(self, [-self.q[0]], self.q[1])
        return NFElement._make(self, [0, 1], 1)

    @property
    def zero(self) -> "NFElement":
        return NFElement._make(self, [], 1)

    @property
    def one(self) -> "NFElement":
        return NFElement._make(self, [1], 1)

    def real_embeddings(self) -> int:
        return sturm_real_roots(list(self.q))

    def _reduce(self, c: list[int], d: int) -> tuple[list[int], int]:
        n = self.degree
        if len(c) <= n:
            return c, d
        low = [x * self._den for x in c[:n]] + [0] * max(0, n - len(c))
        for k in range(n, len(c)):
            t = c[k]
            if t:
                row = self._rows[k - n]
                for i in range(n):
                    low[i] += t * row[i]
        return low, d * self._den

    def __repr__(self):
        from ..poly.upoly import UPoly
        return f"NumberField({UPoly(self.q).format('x')})"


class NFElement:
    __slots__ = ("K", "c", "d")

    def __init__(self, K: NumberField, c):
        """Build from rational coefficients (low to high)."""
        fr = [Fraction(x) for x in c]
        d = 1
        for x in fr:
            d = d * x.denominator // igcd(d, x.denominator)
        ints = [int(x * d) for x in fr]
        ints, d = K._reduce(ints, d)
        self._set(K, ints, d)

    @classmethod
    def _make(cls, K, ints, d):
        obj = cls.__new__(cls)
        ints, d = K._reduce(ints, d)
        obj._set(K, ints, d)
        return obj

    def _set(self, K, ints, d):
        while ints and not ints[-1]:
            ints.pop()
        if not ints:
            d = 1
        else:
            g = d
            for x in ints:
                g = igcd(g, x)
                if g == 1:
                    break
            if g > 1:
                ints = [x // g for x in ints]
                d //= g
        self.K = K
        self.c = tuple(ints)
        self.d = d

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.d) for x in self.c)

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.K(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o.c and self.d == o.d

    def __hash__(self):
        return hash((self.c, self.d))

    def __add__(self, other):
        if isinstance(other, int):
            if not other:
                return self
            c = list(self.c) or [0]
            c[0] += other * self.d
            return NFElement._make(self.K, c, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.c:
            return self
        if not self.c:
            return o
        a, b = self.c, o.c
        if self.d == o.d:
            n = max(len(a), len(b))
            c = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
            return NFElement._make(self.K, c, self.d)
        da, db = self.d, o.d
        n = max(len(a), len(b))
        c = [(a[i] * db if i < len(a) else 0) + (b[i] * da if i < len(b) else 0) for i in range(n)]
        return NFElement._make(self.K, c, da * db)

    __radd__ = __add__

    def __neg__(self):
        return NFElement._make(self.K, [-x for x in self.c], self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return NFElement._make(self.K, [x * other for x in self.c], self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if not a or not b:
            return self.K.zero
        if len(b) == 1:
            return NFElement._make(self.K, [x * b[0] for x in a], self.d * o.d)
        if len(a) == 1:
            return NFElement._make(self.K, [a[0] * y for y in b], self.d * o.d)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return NFElement._make(self.K, out, self.d * o.d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.K.one
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self) -> "NFElement":
        if not self.c:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid in QQ[x]: s*self + t*q = 1
        r0 = [Fraction(c) for c in self.K.q]
        r1 = list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible (defining polynomial reducible)")
        inv = 1 / r0[0]
        return NFElement(self.K, [x * inv for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coeffs]

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k, x in enumerate(self.coeffs):
            if x:
                terms.append(f"{x}" if k == 0 else f"{x}*{self.K.name}" + (f"^{k}" if k > 1 else ""))
        return " + ".join(terms)


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(Fraction(x) for x in c)


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return list(_trim(out))


def _sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return list(_trim(out))


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
        while a and not a[-1]:
            a.pop()
    return list(_trim(q)), a


# -- univariate polynomials over a number field --------------------------------------

def kpoly_trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def kpoly_divmod(a: list, b: list):
    a = list(a)
    b = kpoly_trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = b[-1].inverse()
    q = [None] * max(len(a) - len(b) + 1, 0)
    K = b[-1].K
    for i in range(len(q)):
        q[i] = K.zero
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - c * y
        a.pop()
        kpoly_trim(a)
    return kpoly_trim(q), a


def kpoly_gcd(a: list, b: list) -> list:
    a, b = kpoly_trim(list(a)), kpoly_trim(list(b))
    while b:
        a, b = b, kpoly_divmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [x * inv for x in a]
