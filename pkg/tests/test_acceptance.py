"""Acceptance criteria, one test each; every test prints a PASS or FAIL line."""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import combinations
from pathlib import Path

import pytest

from olext import catalog
from olext.extend import enumerate_census, nine3_census
from olext.moduli import build_reduced, classify_arrangement, shipped_plan
from olext.poly import (MPoly, absolutely_irreducible, fp_irreducible, minkowski_sum,
                        newton_polytope, parse, z_irreducible_by_specialization)
from olext.symmetry import (ArrangementMap, automorphism_group, brute_force_isomorphism,
                            find_isomorphism, verify_map)

HERE = Path(__file__).parent
ANO_POLY = "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1"


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def report(n, title):
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\n[criterion {n}] FAIL  {title}: {type(exc).__name__}: {exc}"[:300])
            raise
        with capsys.disabled():
            print(f"\n[criterion {n}] PASS  {title}")
    return report


def info(capsys, text):
    with capsys.disabled():
        print(f"\n[info] {text}")


def reference_rows():
    rows = []
    for line in (HERE / "data" / "reducible_rows.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        name, m, mc = line.split()
        rows.append((name, m, mc))
    return rows


def map_from_points(A, B, point_map):
    lm = tuple(B.line_sets.index(frozenset(point_map[p] for p in line)) for line in A.lines)
    return ArrangementMap(dict(point_map), lm)


def test_automorphism_orders(criterion):
    with criterion(1, "automorphism group orders"):
        t = time.perf_counter()
        orders = [automorphism_group(e.arrangement).order for e in catalog.ten3()]
        assert orders == [120, 12, 4, 24, 2, 6, 3, 3, 4, 10]
        assert automorphism_group(catalog.lookup("fano")).order == 168
        assert automorphism_group(catalog.lookup("(9_3)_1")).order == 108
        assert time.perf_counter() - t < 10


def test_census_k3(criterion):
    with criterion(2, "census through three double points"):
        t = time.perf_counter()
        r = enumerate_census(3)
        assert r.per_config_counts == [4, 17, 42, 11, 76, 30, 50, 50, 39, 17]
        assert r.subtotal == 336
        assert len(r.identified_pairs) == 15
        assert r.total == 321
        assert time.perf_counter() - t < 300


def test_census_k4_k5(criterion):
    with criterion(3, "census through four and five double points"):
        r4 = enumerate_census(4)
        assert r4.subtotal == 188 and r4.total == 151 and len(r4.identified_pairs) == 37
        r5 = enumerate_census(5)
        assert r5.per_config_counts == [1, 1, 2, 1, 5, 2, 2, 3, 3, 3]
        assert r5.total == 23
        assert not r5.identified_pairs and not r5.self_pairs


def test_nine3_census(criterion):
    with criterion(4, "(9_3) census and witnesses"):
        r = nine3_census()
        assert r.per_config_counts[0] == 2
        assert r.total == 11
        pairs = [("CDI", "CFH"), ("CDG", "CDH"), ("CDG", "CFG"), ("CDH", "CFG")]
        for x, y in pairs:
            A, B = catalog.lookup(f"(9_3)_1.{x}"), catalog.lookup(f"(9_3)_1.{y}")
            phi = find_isomorphism(A, B)
            assert phi is not None and verify_map(A, B, phi)


def test_isomorphism_witnesses(criterion, small_corpus):
    with criterion(5, "explicit isomorphisms and brute-force oracle"):
        A, B = catalog.lookup("(10_3)_5.BDL"), catalog.lookup("(10_3)_5.BIK")
        assert verify_map(A, B, map_from_points(A, B, dict(zip("0123456789BDL", "86I7B930K2145"))))
        A, B = catalog.lookup("(9_3)_1.CDI"), catalog.lookup("(9_3)_1.CFH")
        assert verify_map(A, B, map_from_points(A, B, dict(zip("012345678CDI", "431268057CFH"))))
        for x, y in (("(10_3)_5.BDL", "(10_3)_5.BIK"), ("(10_3)_1.AEM", "(10_3)_6.KLO"),
                     ("(9_3)_1.CDI", "(9_3)_1.CFH")):
            A, B = catalog.lookup(x), catalog.lookup(y)
            phi = find_isomorphism(A, B)
            assert phi is not None and verify_map(A, B, phi)
        for A, B in combinations(small_corpus, 2):
            fast, slow = find_isomorphism(A, B), brute_force_isomorphism(A, B)
            assert (fast is None) == (slow is None)
            assert fast is None or verify_map(A, B, fast)


def test_polynomial_suite(criterion):
    with criterion(6, "polynomial suite"):
        t = time.perf_counter()
        f = parse(ANO_POLY)
        assert newton_polytope(f).vertices == ((0, 0), (1, 0), (2, 2), (4, 1), (4, 2))
        g = f.substitute({"a": -1})
        assert g == parse("5*b^2 + 8*b + 2", f.vars)
        assert fp_irreducible([2, 8, 5], 7)
        assert z_irreducible_by_specialization(f, "b", {"a": -1}, 7).certified
        assert str(absolutely_irreducible(f)) == "Certified"
        rng = random.Random(20240101)
        for _ in range(1000):
            p, q = _random_poly(rng, 2), _random_poly(rng, 2)
            assert not absolutely_irreducible(p * q).certified, (p, q)
        for _ in range(1000):
            arity = rng.choice((2, 3))
            p, q = _random_poly(rng, arity, 4), _random_poly(rng, arity, 4)
            assert newton_polytope(p * q) == minkowski_sum(newton_polytope(p), newton_polytope(q))
        assert time.perf_counter() - t < 30


def _random_poly(rng, arity, max_degree=2):
    """Nonconstant, so that products of two have degree at most 4."""
    names = ("a", "b", "c")[:arity]
    while True:
        terms = {}
        for _ in range(rng.randint(1, 5)):
            e = [0] * arity
            for _ in range(rng.randint(0, max_degree)):
                e[rng.randrange(arity)] += 1
            terms[tuple(e)] = rng.randint(-9, 9)
        f = MPoly(terms, names)
        if not f.is_zero() and f.degree() >= 1:
            return f


def _verdicts():
    return {n: classify_arrangement(catalog.lookup(n))
            for n in ("fano", "(10_3)_4", "(10_3)_5.ANO", "(10_3)_7.ADO", "(10_3)_1.AEIKO")}


@pytest.mark.xfail(strict=True, reason="(10_3)_1.AEIKO classifies as a one-dimensional family, "
                   "not two isolated points; see the decisions ledger")
def test_moduli_worked_examples(criterion, capsys):
    v = _verdicts()
    info(capsys, "worked examples: " + ", ".join(f"{n} -> {c}" for n, c in v.items()))
    with criterion(7, "moduli worked examples"):
        A = catalog.lookup("(10_3)_5.ANO")
        M = build_reduced(A, shipped_plan("(10_3)_5.ANO"))
        assert [str(h) for h in M.reduced] == [str(parse(ANO_POLY))]
        assert v["fano"].verdict == "Empty"
        assert v["(10_3)_4"].verdict == "Empty"
        assert str(v["(10_3)_5.ANO"]) == "Irreducible(1)"
        assert str(v["(10_3)_7.ADO"]) == "Reducible(2, 2, dim 1)"
        assert str(v["(10_3)_1.AEIKO"]) == "FinitePoints(2, 2)"


def _matches(c, m, mc):
    counts = c.counts
    if counts is None:
        return None
    return (str(counts[0]), str(counts[1])) == (m, mc)


def test_sampled_classification_table(criterion, capsys):
    rows = {name: (m, mc) for name, m, mc in reference_rows()}
    named = ["3.BDIL", "5.AFLO", "8.AEIM", "7.AEIM"]
    rest = [n for n in rows if n not in named]
    sample = named + random.Random(0).sample(rest, 6)
    with criterion(8, "sampled rows of the reducible-moduli table"):
        reproduced, unknown, contradicted = [], [], []
        for name in sample:
            j, letters = name.split(".")
            c = classify_arrangement(catalog.lookup(f"(10_3)_{j}.{letters}"))
            ok = _matches(c, *rows[name])
            (unknown if ok is None else reproduced if ok else contradicted).append(f"{name}:{c}")
        info(capsys, f"sample {sample}: reproduced {len(reproduced)}, unknown {len(unknown)}, "
             f"contradicted {contradicted}")
        assert len(sample) >= 10
        assert len(reproduced) >= 6
        assert not contradicted


def test_full_reducible_table(capsys):
    """Not a criterion: the whole table, pinned so that changes in the tally show up."""
    bad, unknown = [], []
    rows = reference_rows()
    for name, m, mc in rows:
        j, letters = name.split(".")
        c = classify_arrangement(catalog.lookup(f"(10_3)_{j}.{letters}"))
        ok = _matches(c, m, mc)
        if ok is None:
            unknown.append(name)
        elif not ok:
            bad.append(f"{name} expected ({m}, {mc}) got {c}")
    info(capsys, f"full table: {len(rows) - len(bad) - len(unknown)}/{len(rows)} reproduced, "
         f"{len(unknown)} unknown, disagreements: {bad}")
    assert sorted(b.split()[0] for b in bad) == ["1.AEIK", "5.DKMN", "7.AEIO"]


def test_property_suites_standalone(criterion):
    with criterion(9, "property suites run standalone"):
        t = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                               str(HERE / "test_properties.py")],
                              capture_output=True, text=True, cwd=HERE.parent)
        assert proc.returncode == 0, proc.stdout[-2000:]
        assert time.perf_counter() - t < 120
