import pytest

from olext.poly import (MPoly, UPoly, absolutely_irreducible, find_specialization_certificate,
                        fp_irreducible, fp_irreducible_bruteforce, gao_coprime_test, gcd,
                        minkowski_sum, newton_polytope, parse, rational_factors, resultant,
                        squarefree, squarefree_part, sturm_real_roots, vertex_gcd,
                        z_irreducible_by_specialization)
from olext.poly.factor import factor_list
from olext.poly.polytope import polytope_of_points

ANO = "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1"
XY = ["x", "y"]


@pytest.fixture
def f_ano():
    return parse(ANO)


def test_parse_and_print_round_trip(f_ano):
    assert parse(str(f_ano), f_ano.vars) == f_ano
    assert MPoly.from_json(f_ano.to_json()) == f_ano


def test_substitute_gives_known_specialization(f_ano):
    g = f_ano.substitute({"a": -1})
    assert g == parse("5*b^2 + 8*b + 2", f_ano.vars)
    assert g.used_vars() == [1]


def test_substitute_polynomial_value():
    f = parse("x^2 + y", XY)
    assert f.substitute({"y": parse("x", XY)}) == parse("x^2 + x", XY)


def test_small_identities():
    x, y = MPoly.gens(XY)
    f = parse("3*x^2*y - 7*y + 1", XY)
    assert f * MPoly.const(1, XY) == f
    assert (x + y) * (x - y) == parse("x^2 - y^2", XY)
    assert f - f == MPoly.const(0, XY)


def test_arity_mismatch():
    with pytest.raises(ValueError):
        parse("x", ["x"]) + parse("x + y", XY)


def test_parse_errors():
    for bad in ("x +", "x^", "(x + 1", "2*"):
        with pytest.raises(ValueError):
            parse(bad, XY)


def test_newton_polytope_of_ano(f_ano):
    assert newton_polytope(f_ano).vertices == ((0, 0), (1, 0), (2, 2), (4, 1), (4, 2))


def test_newton_polytope_small():
    assert newton_polytope(parse("a^2*b^3")).vertices == ((2, 3),)
    assert newton_polytope(parse("x + y + 1", XY)).vertices == ((0, 0), (0, 1), (1, 0))


def test_newton_polytope_three_variables():
    P = newton_polytope(parse("x*y*z + x^2 + y^2 + z^2 + 1 + x*y", ["x", "y", "z"]))
    assert P.vertices == ((0, 0, 0), (0, 0, 2), (0, 2, 0), (1, 1, 1), (2, 0, 0))


def test_newton_polytope_rejects_zero_and_four_variables():
    with pytest.raises(ValueError):
        newton_polytope(MPoly.const(0, XY))
    with pytest.raises(ValueError):
        newton_polytope(parse("w + x + y + z", ["w", "x", "y", "z"]))


def test_minkowski_sums():
    P = newton_polytope(parse("x + 1", XY))
    Q = newton_polytope(parse("y + 1", XY))
    assert minkowski_sum(P, Q).vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    mono = minkowski_sum(newton_polytope(parse("x", XY)), newton_polytope(parse("y", XY)))
    assert mono.vertices == ((1, 1),)
    origin = polytope_of_points([(0, 0)], 2)
    assert minkowski_sum(P, origin) == P


def test_minkowski_arity_mismatch():
    with pytest.raises(ValueError):
        minkowski_sum(newton_polytope(parse("x + 1", ["x"])), newton_polytope(parse("y + 1", XY)))


def test_gao_coprime(f_ano):
    assert gao_coprime_test(f_ano)
    assert vertex_gcd(newton_polytope(f_ano)) == 1
    assert not gao_coprime_test(parse("x^2*y^2", XY))
    assert gao_coprime_test(parse("x + 1", XY))


def test_fp_irreducible_examples():
    assert fp_irreducible([2, 8, 5], 7)
    assert not fp_irreducible([0, 0, 1], 7)
    assert not fp_irreducible([1, 0, 1], 5)
    with pytest.raises(ValueError):
        fp_irreducible([1, 0, 1], 9)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fp_irreducible_agrees_with_brute_force(p):
    import random
    rng = random.Random(p)
    for _ in range(60):
        h = [rng.randrange(p) for _ in range(rng.randint(2, 5))] + [1]
        assert fp_irreducible(h, p) == fp_irreducible_bruteforce(h, p)


def test_specialization_lemma(f_ano):
    cert = z_irreducible_by_specialization(f_ano, "b", {"a": -1}, 7)
    assert cert.certified and cert.h == (2, 1, 5)


def test_specialization_never_certifies_products():
    f = parse("(a + b)*(a - b)")
    for v in range(-3, 4):
        for p in (3, 5, 7, 11):
            assert not z_irreducible_by_specialization(f, "b", {"a": v}, p).certified


def test_specialization_degree_drop():
    f = parse("a*b^2 + b + 1")
    cert = z_irreducible_by_specialization(f, "b", {"a": 0}, 7)
    assert not cert.certified and "degree" in cert.reason


def test_specialization_content_guard():
    # the factor (a + 1) is invisible to every specialization of a
    f = parse("(a + 1)*(b^2 + 3)")
    assert not z_irreducible_by_specialization(f, "b", {"a": 1}, 7).certified
    assert find_specialization_certificate(f) is None


def test_absolutely_irreducible_examples(f_ano):
    assert str(absolutely_irreducible(f_ano)) == "Certified"
    assert not absolutely_irreducible(parse("a^2 - 5*b^2")).certified
    assert str(absolutely_irreducible(parse("x + y", XY))) == "Certified"
    assert not absolutely_irreducible(parse("x^2 + 1", XY)).certified
    with pytest.raises(ValueError):
        absolutely_irreducible(MPoly.const(3, XY))


def test_mod_p_route():
    # vertices (0,0), (2,0), (0,2) share the factor 2 over QQ but mod 3 the
    # constant term vanishes and (1, 1) becomes a vertex
    f = parse("x^2 + y^2 + x*y + 3", XY)
    r = absolutely_irreducible(f)
    assert str(r) in ("CertifiedViaModP(3)", "Unknown")
    assert r.verdict.value != "Certified"


def test_sturm_examples():
    assert sturm_real_roots([-1, -2, 4]) == 2
    assert sturm_real_roots([1, 0, 1]) == 0
    assert sturm_real_roots([0, -1, 1]) == 2
    assert sturm_real_roots([0, -1, 1], 0, 1) == 1
    assert sturm_real_roots([0, 0, -1, 0, 1]) == 3  # repeated root counted once
    with pytest.raises(ValueError):
        sturm_real_roots([])


def test_rational_factors():
    assert sorted(rational_factors([-1, 0, 1]), key=lambda u: u.coeffs) == [UPoly([-1, 1]), UPoly([1, 1])]
    assert rational_factors([2, 8, 5]) == [UPoly([2, 8, 5])]
    assert sorted(rational_factors([0, 0, -5, 0, 1]), key=lambda u: u.degree) == \
        [UPoly([0, 1]), UPoly([0, 1]), UPoly([-5, 0, 1])]
    with pytest.raises(ValueError):
        rational_factors([1] * 14)


def test_univariate_helpers():
    assert squarefree([0, 0, 1]) == UPoly([0, 1])
    # Res(x^2 - 2, x^2 - 3) = 1
    assert resultant([-2, 0, 1], [-3, 0, 1]) == 1
    assert resultant([-1, 1], [-1, 1]) == 0


def test_multivariate_gcd_and_squarefree():
    f = parse("(x + y)^2*(x - 2*y)", XY)
    assert gcd(f, parse("(x + y)*(x + 1)", XY)).normalized() == parse("x + y", XY)
    assert squarefree_part(f).normalized() == parse("(x + y)*(x - 2*y)", XY).normalized()


def test_factor_list():
    f = parse("6*(x + y)^2*(x - 2*y)", XY)
    c, fs = factor_list(f)
    prod = MPoly.const(c, XY)
    for g, e in fs:
        prod = prod * g ** e
    assert prod == f
    assert sorted(e for _, e in fs) == [1, 2]
