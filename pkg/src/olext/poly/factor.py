"""Multivariate factorization over QQ, delegated to sympy."""

from __future__ import annotations

import sympy

from .mpoly import MPoly


def to_sympy(f: MPoly, gens=None) -> sympy.Poly:
    gens = gens or sympy.symbols(f.vars)
    return sympy.Poly.from_dict(dict(f.terms), gens)


def from_sympy(p, vars) -> MPoly:
    terms = {}
    for e, c in p.as_dict().items():
        c = sympy.Rational(c)
        if c.q != 1:
            raise ArithmeticError("non-integer coefficient")
        terms[tuple(int(x) for x in e)] = int(c)
    return MPoly(terms, vars)


def factor_list(f: MPoly) -> tuple[int, list[tuple[MPoly, int]]]:
    """Content and QQ-irreducible primitive factors with multiplicities."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if len(f.vars) == 0:
        return f.constant_value(), []
    gens = sympy.symbols(f.vars)
    coeff, fl = to_sympy(f, gens).factor_list()
    coeff = int(coeff)
    out = []
    for g, m in fl:
        p = from_sympy(g, f.vars)
        if p.is_constant():
            coeff *= p.constant_value() ** m
        else:
            out.append((p, m))
    return coeff, out


def rational_factor_list(f: MPoly) -> list[MPoly]:
    """Distinct QQ-irreducible factors of f, normalized."""
    seen = []
    for p, _ in factor_list(f)[1]:
        p = p.normalized()
        if p not in seen:
            seen.append(p)
    return seen
