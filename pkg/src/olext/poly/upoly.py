"""Dense univariate polynomials over ZZ, QQ and F_p.

Coefficient lists run from the constant term upward.  Helpers accept plain
lists or :class:`UPoly`.
"""

from __future__ import annotations

import random
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, product
from math import gcd as igcd, isqrt
from typing import Sequence


class UPoly:
    """Integer polynomial in one variable with a nonzero leading coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        self.coeffs = tuple(_trim([int(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "UPoly") -> "UPoly":
        return UPoly(_mul(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"UPoly({self.format()!r})"

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            body = str(abs(c)) if not mono else mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return s + "".join(f" {sg} {b}" for sg, b in parts[1:])


def _coeffs(u) -> list:
    return list(u.coeffs) if isinstance(u, UPoly) else list(u)


# -- generic list arithmetic ------------------------------------------------------

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _sub(a, b):
    return _add(a, [-c for c in b])


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _deriv(a):
    return _trim([k * a[k] for k in range(1, len(a))])


def _divmod_q(a, b):
    """Division over QQ."""
    a = [Fraction(c) for c in a]
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
        _trim(a)
    return _trim(q), a


def content(a) -> int:
    g = 0
    for c in a:
        g = igcd(g, int(c))
    return g


def primitive(a) -> list[int]:
    """Primitive integer multiple with positive leading coefficient."""
    a = _trim(list(a))
    if not a:
        return []
    if any(isinstance(c, Fraction) for c in a):
        den = 1
        for c in a:
            den = den * Fraction(c).denominator // igcd(den, Fraction(c).denominator)
        a = [int(Fraction(c) * den) for c in a]
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zprem(a, b):
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r.pop()
        _trim(r)
    return r


def zgcd(a, b) -> list[int]:
    """Primitive gcd of two integer polynomials (content ignored)."""
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, primitive(_zprem(a, b))
    return a


def squarefree(u) -> UPoly:
    a = _coeffs(u)
    if not a:
        raise ValueError("zero polynomial")
    a = primitive(a)
    return UPoly(primitive(exact_quotient(a, zgcd(a, _deriv(a)))))


def exact_quotient(a, b) -> list[int]:
    """Quotient of integer polynomials; raises if the division is not exact in ZZ[x]."""
    a = _trim([int(c) for c in a])
    b = _trim(list(b))
    nb = len(b)
    if len(a) < nb:
        if a:
            raise ArithmeticError("inexact division")
        return []
    lb = b[-1]
    q = [0] * (len(a) - nb + 1)
    for k in range(len(a) - nb, -1, -1):
        c, r = divmod(a[k + nb - 1], lb)
        if r:
            raise ArithmeticError("inexact division")
        if c:
            q[k] = c
            for i in range(nb - 1):
                a[i + k] -= c * b[i]
    if any(a[:nb - 1]):
        raise ArithmeticError("inexact division")
    return _trim(q)


# -- Sturm sequences -----------------------------------------------------------------

def _sign_at(a, x) -> int:
    """Sign of a at x; x may be a Fraction, or +/-inf given as None paired with side."""
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def _sign_inf(a, positive: bool) -> int:
    lc = a[-1]
    s = (lc > 0) - (lc < 0)
    if not positive and (len(a) - 1) % 2:
        s = -s
    return s


def sturm_sequence(u) -> list[list]:
    a = [Fraction(c) for c in _coeffs(u)]
    seq = [a, _deriv(a)]
    while seq[-1]:
        _, r = _divmod_q(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def sturm_real_roots(u, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi]; ``None`` stands for -inf / +inf."""
    a = _coeffs(u)
    if not _trim(list(a)):
        raise ValueError("zero polynomial")
    sf = list(squarefree(a).coeffs)
    if len(sf) <= 1:
        return 0
    seq = sturm_sequence(sf)

    def var_at(x, side):
        if x is None:
            return _variations([_sign_inf(s, side) for s in seq])
        return _variations([_sign_at(s, Fraction(x)) for s in seq])

    v_lo = var_at(lo, False)
    v_hi = var_at(hi, True)
    return v_lo - v_hi


# -- F_p arithmetic -------------------------------------------------------------------

@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(limit: int) -> tuple[int, ...]:
    return tuple(p for p in range(2, limit + 1) if is_prime(p))


def primes(limit: int) -> list[int]:
    return list(_primes(limit))


def fp(a, p) -> list[int]:
    return _trim([c % p for c in a])


def _fp_mul(a, b, p):
    return fp(_mul(a, b), p)


def _fp_sub(a, b, p):
    return fp(_sub(a, b), p)


def _fp_divmod(a, b, p):
    a = fp(a, p)
    b = fp(b, p)
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    nb = len(b)
    if len(a) < nb:
        return [], a
    q = [0] * (len(a) - nb + 1)
    for k in range(len(a) - nb, -1, -1):
        c = a[k + nb - 1] * inv % p
        if c:
            q[k] = c
            for i in range(nb - 1):
                a[i + k] = (a[i + k] - c * b[i]) % p
    del a[nb - 1:]
    return _trim(q), _trim(a)


def _fp_monic(a, p):
    a = fp(a, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a, b, p):
    a, b = fp(a, p), fp(b, p)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)


def _fp_powmod(base, e, mod, p):
    out = [1]
    base = _fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = _fp_divmod(_fp_mul(out, base, p), mod, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def fp_irreducible(h, p: int) -> bool:
    """Irreducibility of ``h mod p`` over F_p (Ben-Or's distinct-degree test)."""
    _check_prime(p)
    f = _fp_monic(_coeffs(h), p)
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    xpow = [0, 1]
    for _ in range(d // 2):
        xpow = _fp_powmod(xpow, p, f, p)
        if len(fp_gcd(f, _fp_sub(xpow, [0, 1], p), p)) > 1:
            return False
    return True


def fp_irreducible_bruteforce(h, p: int) -> bool:
    """Reference test: try every monic divisor of degree <= deg/2."""
    _check_prime(p)
    f = _fp_monic(_coeffs(h), p)
    d = len(f) - 1
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            if not _fp_divmod(f, list(tail) + [1], p)[1]:
                return False
    return True


def fp_ddf(f, p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a squarefree polynomial over F_p."""
    f = _fp_monic(f, p)
    out = []
    xpow = [0, 1]
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        xpow = _fp_powmod(xpow, p, rest, p)
        g = fp_gcd(rest, _fp_sub(xpow, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = _fp_divmod(rest, g, p)[0]
            xpow = _fp_divmod(xpow, rest, p)[1]
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def fp_factor_squarefree(f, p: int, rng: random.Random | None = None) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial over F_p, p odd."""
    rng = rng or random.Random(0)
    out = []
    for g, d in fp_ddf(f, p):
        out.extend(_fp_edf(g, d, p, rng))
    return sorted(out)


def _fp_edf(g, d, p, rng):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a)
        if len(a) < 2:
            continue
        b = _fp_powmod(a, (p ** d - 1) // 2, g, p)
        h = fp_gcd(g, _fp_sub(b, [1], p), p)
        if 1 < len(h) < len(g):
            return _fp_edf(h, d, p, rng) + _fp_edf(_fp_divmod(g, h, p)[0], d, p, rng)


# -- factorization over QQ -----------------------------------------------------------

def _symmetric(a, m):
    h = m // 2
    return [c % m - m if c % m > h else c % m for c in a]


def _hensel_step(f, g, h, s, t, p, m):
    """Lift f = g*h (mod m) to modulus m*p; g monic, s*g + t*h = 1 (mod p)."""
    e = [c // m for c in _sub(f, _mul(g, h))]
    e = fp(e, p)
    q, r = _fp_divmod(_fp_mul(t, e, p), g, p)
    a = r
    b = fp(_add(_mul(s, e), _mul(q, h)), p)
    return _add(g, [m * c for c in a]), _add(h, [m * c for c in b])


def _bezout_fp(g, h, p):
    """s, t with s*g + t*h = 1 over F_p."""
    r0, r1 = fp(g, p), fp(h, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, p), p)
        t0, t1 = t1, _fp_sub(t0, _fp_mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _hensel_lift(f, factors, p, k):
    """Lift f = lc * prod(factors) (mod p) to monic factors mod p^k."""
    if len(factors) == 1:
        m = p ** k
        inv = pow(f[-1], -1, m)
        return [[c * inv % m for c in f]]
    half = len(factors) // 2
    G = [1]
    for u in factors[:half]:
        G = _fp_mul(G, u, p)
    H = [f[-1] % p]
    for u in factors[half:]:
        H = _fp_mul(H, u, p)
    s, t = _bezout_fp(G, H, p)
    H[-1] = f[-1]
    m = p
    g, h = G, H
    for _ in range(k - 1):
        g, h = _hensel_step(f, g, h, s, t, p, m)
        m *= p
    g = [c % m for c in g]
    h = [c % m for c in h]
    return _hensel_lift(g, factors[:half], p, k) + _hensel_lift(h, factors[half:], p, k)


def _norm2(a) -> int:
    return isqrt(sum(c * c for c in a)) + 1


def _zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree f with deg >= 2."""
    n = len(f) - 1
    lc = f[-1]
    best = None
    good = 0
    for p in primes(400)[1:]:
        if lc % p == 0:
            continue
        fb = fp(f, p)
        if len(fp_gcd(fb, fp(_deriv(f), p), p)) > 1:
            continue
        ddf = fp_ddf(fb, p)
        count = sum((len(g) - 1) // d for g, d in ddf)
        if count == 1:
            return [f]
        if best is None or count < best[1]:
            best = (p, count, ddf)
        good += 1
        if good >= 5:
            break
    if best is None:
        raise ArithmeticError("no suitable prime for factorization")
    p, _, ddf = best
    rng = random.Random(0)
    facs = sorted(u for g, d in ddf for u in _fp_edf(g, d, p, rng))
    bound = 2 * abs(lc) * (2 ** n) * _norm2(f)
    k = 1
    while p ** k <= bound:
        k += 1
    m = p ** k
    lifted = _hensel_lift(f, facs, p, k)
    out = []
    rest = list(f)
    s = 1
    while 2 * s <= len(lifted):
        found = False
        for S in combinations(range(len(lifted)), s):
            lcr = rest[-1]
            g = [lcr]
            for i in S:
                g = [c % m for c in _mul(g, lifted[i])]
            g = primitive(_symmetric(g, m))
            try:
                q = exact_quotient(rest, g)
            except ArithmeticError:
                continue
            out.append(g)
            rest = q
            lifted = [u for i, u in enumerate(lifted) if i not in S]
            found = True
            break
        if not found:
            s += 1
    out.append(primitive(rest))
    return out


def _sqf_decomposition(a: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm over QQ, returning primitive integer parts."""
    out = []
    a = primitive(a)
    g = zgcd(a, _deriv(a))
    w = exact_quotient(a, g)
    c = g
    i = 1
    while len(w) > 1:
        y = zgcd(w, c)
        z = primitive(exact_quotient(w, y))
        if len(z) > 1:
            out.append((z, i))
        w = y
        c = exact_quotient(c, y)
        i += 1
    return out


def rational_factors(u, max_degree: int = 12) -> list[UPoly]:
    """Factor over QQ into primitive integer irreducibles, repeated by multiplicity."""
    a = _trim(_coeffs(u))
    if not a:
        raise ValueError("zero polynomial")
    if len(a) - 1 > max_degree:
        raise ValueError(f"degree {len(a) - 1} exceeds the bound {max_degree}")
    out = []
    for z, mult in _sqf_decomposition(primitive(a)):
        parts = [z] if len(z) <= 2 else _zassenhaus(z)
        for g in parts:
            out.extend([UPoly(g)] * mult)
    return sorted(out, key=lambda g: (g.degree, g.coeffs))


def is_rational_irreducible(u) -> bool:
    fs = rational_factors(u, max_degree=10 ** 6)
    return len(fs) == 1


# -- resultants ----------------------------------------------------------------------

def bareiss_det(M: list[list]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def sylvester(a, b, da: int | None = None, db: int | None = None) -> list[list]:
    a, b = list(a), list(b)
    da = len(a) - 1 if da is None else da
    db = len(b) - 1 if db is None else db
    a = a + [0] * (da + 1 - len(a))
    b = b + [0] * (db + 1 - len(b))
    n = da + db
    rows = []
    for i in range(db):
        row = [0] * n
        for k in range(da + 1):
            row[i + k] = a[da - k]
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for k in range(db + 1):
            row[i + k] = b[db - k]
        rows.append(row)
    return rows


def resultant(a, b, da: int | None = None, db: int | None = None) -> int:
    """Resultant with respect to formal degrees ``da``, ``db``."""
    return bareiss_det(sylvester(a, b, da, db))
