"""Irreducibility certificates: specialization, Gao's criterion, reduction mod p.

Every routine here is one-directional.  A certificate proves irreducibility;
failure to find one proves nothing and is reported as ``UNKNOWN``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Mapping, Sequence

from .mpoly import MPoly, content_in
from .polytope import newton_polytope, vertex_gcd
from .upoly import fp, fp_gcd, fp_irreducible, is_prime, primes, rational_factors

DEFAULT_PRIMES = tuple(primes(97))
DEFAULT_VALUES = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5)


class Verdict(str, Enum):
    CERTIFIED = "Certified"
    CERTIFIED_MOD_P = "CertifiedViaModP"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SpecializationCertificate:
    """Outcome of the specialization lemma for one (keep, assignment, p)."""

    certified: bool
    keep: str
    assignment: dict
    p: int
    h: tuple = ()
    reason: str = ""

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "Unknown"

    def to_json(self) -> dict:
        return {"status": self.status, "keep": self.keep, "assignment": self.assignment,
                "p": self.p, "h_mod_p": list(self.h), "reason": self.reason}


@dataclass(frozen=True)
class IrreducibilityResult:
    verdict: Verdict
    prime: int | None = None
    certificate: SpecializationCertificate | None = None
    vertices: tuple = ()
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def __str__(self):
        if self.verdict is Verdict.CERTIFIED_MOD_P:
            return f"CertifiedViaModP({self.prime})"
        return self.verdict.value

    def to_json(self) -> dict:
        return {
            "verdict": str(self),
            "prime": self.prime,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "vertices": [list(v) for v in self.vertices],
            "reason": self.reason,
        }


def _univariate_in(f: MPoly, keep: int) -> list[int]:
    out = [0] * (f.degree_in(keep) + 1 if not f.is_zero() else 0)
    for e, c in f.terms.items():
        out[e[keep]] += c
    while out and not out[-1]:
        out.pop()
    return out


def z_irreducible_by_specialization(f: MPoly, keep: str | int, assignment: Mapping,
                                    p: int) -> SpecializationCertificate:
    """Irreducibility of f over QQ from one univariate specialization mod p.

    Besides the degree condition the content of f in the kept variable has to
    be constant: a factor free of that variable survives every specialization
    as a unit and would otherwise slip through.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = f._index(keep)
    name = f.vars[k]
    assignment = {f.vars[f._index(v)]: int(x) for v, x in assignment.items()}
    missing = [f.vars[i] for i in f.used_vars() if i != k and f.vars[i] not in assignment]
    if name in assignment or missing:
        raise ValueError("assignment must fix every variable except the kept one")

    def unknown(reason, h=()):
        return SpecializationCertificate(False, name, assignment, p, tuple(h), reason)

    d = f.degree_in(k)
    g = _univariate_in(f.substitute(assignment), k)
    h = fp(g, p)
    if d <= 0:
        return unknown("polynomial does not involve the kept variable", h)
    if len(h) - 1 != d:
        return unknown("degree in the kept variable drops under specialization", h)
    if not fp_irreducible(h, p):
        return unknown(f"specialization is reducible mod {p}", h)
    if len(f.used_vars()) > 1 and not content_in(f, k).is_constant():
        return unknown("factor free of the kept variable", h)
    return SpecializationCertificate(True, name, assignment, p, tuple(h), "")


def find_specialization_certificate(
    f: MPoly,
    prime_list: Sequence[int] = DEFAULT_PRIMES,
    values: Sequence[int] = DEFAULT_VALUES,
) -> SpecializationCertificate | None:
    """Deterministic search over kept variable, integer assignment and prime."""
    used = f.used_vars()
    for k in used:
        d = f.degree_in(k)
        if d <= 0:
            continue
        if len(used) > 1 and not content_in(f, k).is_constant():
            continue
        others = [i for i in used if i != k]
        for vals in product(values, repeat=len(others)):
            assignment = {f.vars[i]: v for i, v in zip(others, vals)}
            g = _univariate_in(f.substitute(assignment), k)
            if len(g) - 1 != d:
                continue
            good = [p for p in prime_list if g[-1] % p]
            # a few cheap primes first; a specialization reducible over ZZ stays
            # reducible mod every prime keeping its degree, so then skip the rest
            head, tail = good[:5], good[5:]
            if d > 1:
                cert = _first_certificate(f, k, assignment, head)
                if cert is not None:
                    return cert
                if len(rational_factors(g, max_degree=10 ** 6)) > 1:
                    continue
            cert = _first_certificate(f, k, assignment, tail if d > 1 else good)
            if cert is not None:
                return cert
    return None


def _first_certificate(f, k, assignment, prime_list):
    for p in prime_list:
        cert = z_irreducible_by_specialization(f, k, assignment, p)
        if cert.certified:
            return cert
    return None


def _fp_poly_in(f: MPoly, k: int, p: int) -> dict[int, dict]:
    """f mod p as {degree in x_k: {other exponents: coefficient}}."""
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        c %= p
        if c:
            out.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
    return out


def _fp_content_constant(fbar: MPoly, k: int, p: int) -> bool:
    coeffs = _fp_poly_in(fbar, k, p)
    others = [i for i in fbar.used_vars() if i != k]
    if not others:
        return True
    if any(len(t) == 1 and not any(next(iter(t))) for t in coeffs.values()):
        return True
    if len(others) > 1:
        return False
    j = others[0]
    g: list[int] = []
    for t in coeffs.values():
        u = [0] * (max(e[j] for e in t) + 1)
        for e, c in t.items():
            u[e[j]] = c
        g = fp_gcd(g, u, p) if g else fp(u, p)
        if len(g) == 1:
            return True
    return len(g) <= 1


def _fp_specialization(fbar: MPoly, p: int, values: Sequence[int]):
    used = fbar.used_vars()
    for k in used:
        d = fbar.degree_in(k)
        if d <= 0 or not _fp_content_constant(fbar, k, p):
            continue
        others = [i for i in used if i != k]
        vals = [v % p for v in values]
        vals = list(dict.fromkeys(vals))
        for combo in product(vals, repeat=len(others)):
            assignment = {fbar.vars[i]: v for i, v in zip(others, combo)}
            h = fp(_univariate_in(fbar.substitute(assignment), k), p)
            if len(h) - 1 == d and fp_irreducible(h, p):
                return SpecializationCertificate(True, fbar.vars[k], assignment, p, tuple(h))
    return None


def absolutely_irreducible(
    f: MPoly,
    prime_list: Sequence[int] = DEFAULT_PRIMES,
    values: Sequence[int] = DEFAULT_VALUES,
) -> IrreducibilityResult:
    """Try to certify that f is irreducible over the algebraic closure of QQ."""
    if f.is_zero() or f.is_constant():
        raise ValueError("absolute irreducibility needs a nonconstant polynomial")
    P = newton_polytope(f) if f.arity <= 3 else None
    verts = P.vertices if P else ()
    if f.degree() == 1:
        return IrreducibilityResult(Verdict.CERTIFIED, vertices=verts, reason="linear")
    if len(f.used_vars()) == 1:
        return IrreducibilityResult(Verdict.UNKNOWN, vertices=verts,
                                    reason="univariate of degree > 1 splits over C")
    if P is None:
        return IrreducibilityResult(Verdict.UNKNOWN, reason="more than three variables")
    if vertex_gcd(P) == 1:
        cert = find_specialization_certificate(f, prime_list, values)
        if cert is not None:
            return IrreducibilityResult(Verdict.CERTIFIED, certificate=cert, vertices=verts)
        return IrreducibilityResult(Verdict.UNKNOWN, vertices=verts,
                                    reason="no specialization certificate found")
    for p in prime_list:
        fbar = f.reduce_mod(p)
        if fbar.degree() != f.degree():
            continue
        Pbar = newton_polytope(fbar)
        if vertex_gcd(Pbar) != 1:
            continue
        cert = _fp_specialization(fbar, p, values)
        if cert is not None:
            return IrreducibilityResult(Verdict.CERTIFIED_MOD_P, prime=p, certificate=cert,
                                        vertices=Pbar.vertices)
    return IrreducibilityResult(Verdict.UNKNOWN, vertices=verts,
                                reason="hull vertex coordinates share a factor")
