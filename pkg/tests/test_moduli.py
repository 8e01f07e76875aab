import json
import random
from fractions import Fraction

import pytest

from olext import catalog
from olext.arrangement import Arrangement
from olext.config import ConfigError, Settings, parse_config
from olext.moduli import (Component, PlanError, auto_plan, build, build_reduced,
                          certify_factor, check_realization, classify, classify_arrangement,
                          conjugation_count, parse_plan, plan_candidates, realize, reduce,
                          reduce_constraint, shipped_plan)
from olext.moduli.classify import quadric_rank
from olext.moduli.numberfield import NFElement, NumberField
from olext.moduli.plan import general_position, separated
from olext.poly import parse

ANO_POLY = "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1"
TRIANGLE = Arrangement(((), (), ()))


def revalidate(A, c):
    """Rebuild a witness from its JSON form and check every incidence again."""
    M = c.presentation
    w = c.witness
    if w["field"] is None:
        K, one = None, 1
        vals = [Fraction(w["params"][p][0]) for p in M.params]
    else:
        q = parse(w["field"][len("Q[x]/("):-1], ["x"]).to_univariate(0)
        K = NumberField(q)
        one = K.one
        vals = [NFElement(K, [Fraction(x) for x in w["params"][p]]) for p in M.params]
    return check_realization(A, realize(M, vals, one))


@pytest.mark.parametrize("name", ["fano", "(10_3)_4"])
def test_empty_examples(name):
    assert classify_arrangement(catalog.lookup(name)).verdict == "Empty"


def test_ano_is_irreducible_curve():
    A = catalog.lookup("(10_3)_5.ANO")
    c = classify_arrangement(A)
    assert str(c) == "Irreducible(1)"
    assert revalidate(A, c) == []


def test_ado_has_two_real_components():
    A = catalog.lookup("(10_3)_7.ADO")
    c = classify_arrangement(A)
    assert (c.verdict, c.over_C, c.mod_conjugation, c.dim) == ("Reducible", 2, 2, 1)
    # the split happens over QQ(sqrt 5), matching c = a(1 +- sqrt 5)/4
    assert [comp.field for comp in c.components] == [5]
    assert revalidate(A, c) == []


def test_shipped_plan_reproduces_the_polynomial():
    A = catalog.lookup("(10_3)_5.ANO")
    M = build_reduced(A, shipped_plan("(10_3)_5.ANO"))
    assert M.params == ("a", "b")
    assert [str(h) for h in M.reduced] == [str(parse(ANO_POLY))]
    assert str(classify(M)) == "Irreducible(1)"


def test_plan_independence():
    A = catalog.lookup("(10_3)_5.ANO")
    verdicts = {str(classify(build_reduced(A, p))) for p in plan_candidates(A, limit=4)}
    verdicts.add(str(classify(build_reduced(A, shipped_plan("(10_3)_5.ANO")))))
    assert verdicts == {"Irreducible(1)"}


def test_triangle_needs_no_parameters():
    plan = auto_plan(TRIANGLE)
    assert plan.nparams == 0
    M = build_reduced(TRIANGLE, plan)
    assert M.constraints == [] and M.reduced == []
    assert str(classify(M)) == "Irreducible(0)"


def test_ten3_1_has_three_parameters():
    A = catalog.lookup("(10_3)_1")
    assert auto_plan(A).nparams == 3
    c = classify_arrangement(A)
    assert str(c) == "Irreducible(3)"
    assert revalidate(A, c) == []


def test_determined_elements_are_sound():
    A = catalog.lookup("(10_3)_1")
    M = build_reduced(A)
    rng = random.Random(5)
    checked = 0
    while checked < 10:
        vals = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in M.params]
        if any(g.evaluate(vals) == 0 for g in M.nondegeneracy):
            continue
        assert check_realization(A, realize(M, vals)) == []
        checked += 1


def test_reduce_example():
    a_c = ["a", "c"]
    f = parse("c*(4*c^2 - 2*a*c - a^2)", a_c)
    h = reduce_constraint(f, [parse("c", a_c)])
    assert h == parse("4*c^2 - 2*a*c - a^2", a_c) or h == -parse("4*c^2 - 2*a*c - a^2", a_c)
    g = parse("a + c + 1", a_c)
    assert reduce_constraint(g, [parse("a", a_c)]) == g
    assert reduce_constraint(g, [g]).is_constant()


def test_reduce_drops_contradicted_constraints():
    A = catalog.lookup("fano")
    M = reduce(build(A))
    assert M.infeasible


def test_plan_dsl_round_trip():
    A = catalog.lookup("(10_3)_5.ANO")
    plan = shipped_plan("(10_3)_5.ANO")
    again = parse_plan(plan.to_text(A), A)
    assert again == plan
    assert plan.to_text(A).startswith("basis P9 [1:0:0]")


@pytest.mark.parametrize("text,msg", [
    ("basis P9 [1:0:0]\nmeet P1 = L1 ^ L2\n", "unplaced"),
    ("bogus step\n", "cannot parse"),
    ("basis P1 [1:0:0]\nbasis P2 [0:1:0]\nbasis P3 [0:0:1]\nbasis P4 [1:1:1]\n", "general position"),
    ("basis L99 [1:0:0]\n", "unknown element"),
])
def test_plan_errors(text, msg):
    A = catalog.lookup("(10_3)_1")
    with pytest.raises(PlanError, match=msg):
        parse_plan(text, A)


def test_incomplete_plan():
    with pytest.raises(PlanError, match="does not place"):
        parse_plan("basis L1 [1:0:0]\n", TRIANGLE)


def test_unknown_shipped_plan():
    with pytest.raises(KeyError):
        shipped_plan("(10_3)_1")


def test_separation_rules():
    A = catalog.lookup("(10_3)_1")
    # three lines through a common point are not separated
    p = A.points[0]
    through = [A.names[i] for i in A.point_lines[p]]
    assert not separated(A, through)
    # four points on one line are never a basis
    assert not general_position(A, list(A.lines[0]) + [A.points[-1]])


def test_quadric_rank():
    assert quadric_rank(parse("a^2 - a*b + b^2 - a + 1")) == 3
    assert quadric_rank(parse("a^2 - b^2")) == 2
    assert quadric_rank(parse("a^2 - 5*b^2")) == 2


def test_certify_factor():
    assert certify_factor(parse(ANO_POLY)) is not None
    assert certify_factor(parse("a^2 - a*b + b^2 - a + 1")) is not None
    dim, split = certify_factor(parse("a^2 - 5*b^2"))
    assert split is not None and split.d == 5


def test_conjugation_count_examples():
    assert conjugation_count([Component("f", 5)]) == 2
    assert conjugation_count([Component("f", -1)]) == 1
    assert conjugation_count([Component(points=2, real=2)]) == 2
    assert conjugation_count([Component(points=4, real=0)]) == 2
    merged = conjugation_count([Component("f", 1), Component("g", 5)], merges=[((0, 0), (1, 0))])
    assert merged == 2


def test_conjugation_count_rejects_odd_pairs():
    with pytest.raises(ValueError):
        conjugation_count([Component(points=3, real=0)])


def test_classification_json():
    c = classify_arrangement(catalog.lookup("(10_3)_7.ADO"))
    data = json.loads(json.dumps(c.to_json()))
    assert data["verdict"]["kind"] == "Reducible"
    assert set(data) >= {"params", "constraints", "nondegeneracy", "reduced", "plan", "verdict"}


def test_number_field_arithmetic():
    K = NumberField([-5, 0, 1])
    r = K.gen
    assert r * r == K(5)
    assert (1 + r) * (1 + r).inverse() == K.one
    assert K.real_embeddings() == 2
    assert NumberField([1, 0, 1]).real_embeddings() == 0


def test_config_parsing():
    s = parse_config("max_prime = 31  # small\nvalue_bound=2\ntrial_d = 2, 5, -1\n")
    assert s == Settings(31, 2, (2, 5, -1))
    assert s.primes[-1] == 31 and s.values == (0, 1, -1, 2, -2)
    for bad in ("colour = red", "max_prime = x", "trial_d = 1", "max_prime = 1"):
        with pytest.raises(ConfigError):
            parse_config(bad)


def test_settings_are_threaded_through():
    narrow = Settings(max_prime=2, value_bound=0, trial_d=(2,))
    A = catalog.lookup("(10_3)_7.ADO")
    # sqrt 5 is outside the trial set, so the split cannot be certified
    assert classify_arrangement(A, settings=narrow).verdict != "Reducible"
