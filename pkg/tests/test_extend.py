import json

import pytest

from olext import catalog
from olext.arrangement import ArrangementError, doubles, is_reductive, make_extension_line
from olext.catalog import name_arrangement
from olext.extend import (brute_force_classes, enumerate_census, nine3_census, ol_ext,
                          valid_extension, valid_subsets)
from olext.symmetry import canonical_form, find_isomorphism, verify_map


@pytest.fixture(scope="module")
def census3():
    return enumerate_census(3)


@pytest.fixture(scope="module")
def census4():
    return enumerate_census(4)


def test_valid_extension_examples():
    e = catalog.get("(10_3)_7")
    assert valid_extension(e.arrangement, e.extension("ADO"))
    # a pair of doubles sharing a line
    A = e.arrangement
    d = doubles(A)
    clash = [(x, y) for x in d for y in d if x < y and set(x) & set(y)]
    assert not valid_extension(A, clash[0])


def test_no_valid_six_subsets_on_ten_lines():
    for e in catalog.ten3():
        assert valid_subsets(e.arrangement, 6) == []


def test_repeated_member_collapses_in_a_set():
    e = catalog.get("(10_3)_7")
    a = e.letters["A"]
    assert len(frozenset([a, a])) == 1


def test_make_extension_line_rejects_shared_lines():
    with pytest.raises(ArrangementError):
        make_extension_line([(0, 3), (0, 8)])


def test_naming_sorts_letters():
    e = catalog.get("(10_3)_1")
    L = e.extension("OKIEA")
    assert name_arrangement(e.name, L, e.labels) == "(10_3)_1.AEIKO"
    assert e.name_of(e.extension("MEA")) == "(10_3)_1.AEM"
    assert catalog.normalize_name("(10_3)_7.OAD") == "(10_3)_7.ADO"


def test_naming_needs_labels():
    with pytest.raises(ArrangementError):
        name_arrangement("x", [(0, 1)], {})


def test_ol_ext_uses_lowest_letters():
    e = catalog.get("(10_3)_1")
    reps = ol_ext(5, e.arrangement, e.labels)
    assert [e.name_of(L) for L in reps] == ["(10_3)_1.AEIKO"]


def test_census_k3(census3):
    assert census3.per_config_counts == [4, 17, 42, 11, 76, 30, 50, 50, 39, 17]
    assert census3.raw_subtotal == 337
    assert census3.subtotal == 336
    assert len(census3.self_pairs) == 1
    assert census3.self_pairs[0].kept.startswith("(10_3)_5")
    assert len(census3.identified_pairs) == 15
    assert census3.total == 321


def test_census_k4(census4):
    assert census4.per_config_counts == [2, 8, 21, 5, 45, 16, 25, 30, 24, 12]
    assert census4.subtotal == 188
    assert len(census4.identified_pairs) == 37
    assert census4.total == 151


def test_census_k5(census5):
    assert census5.per_config_counts == [1, 1, 2, 1, 5, 2, 2, 3, 3, 3]
    assert census5.total == 23
    assert census5.identified_pairs == [] and census5.self_pairs == []


def test_census_witnesses_verify(census3, census4):
    for report in (census3, census4):
        for p in report.self_pairs + report.identified_pairs:
            A = report.members[p.dropped].arrangement
            B = report.members[p.kept].arrangement
            assert verify_map(A, B, p.witness)
            assert report.members[p.dropped].flagged and report.members[p.kept].flagged


def test_final_classes_are_pairwise_distinct(census3):
    forms = [canonical_form(census3.members[n].arrangement).hex() for n in census3.classes]
    assert len(set(forms)) == len(forms)


def test_members_are_non_reductive(census3):
    for m in census3.members.values():
        assert len(m.arrangement) == 11
        assert not is_reductive(m.arrangement)


def test_k5_matches_brute_force(census5):
    ours = {canonical_form(census5.members[n].arrangement).hex() for n in census5.classes}
    assert ours == brute_force_classes(5)


def test_parallel_census_is_identical():
    a = enumerate_census(5, jobs=1).dumps()
    b = enumerate_census(5, jobs=2).dumps()
    assert a == b


def test_nine3_census():
    r = nine3_census()
    assert r.per_config_counts[0] == 2
    assert r.total == 11


def test_nine3_witnesses():
    A, B = catalog.lookup("(9_3)_1.CDI"), catalog.lookup("(9_3)_1.CFH")
    phi = find_isomorphism(A, B)
    assert phi is not None and verify_map(A, B, phi)
    G = catalog.lookup("(9_3)_1.CDG")
    for other in ("CDH", "CFG"):
        B = catalog.lookup(f"(9_3)_1.{other}")
        phi = find_isomorphism(G, B)
        assert phi is not None and verify_map(G, B, phi)


def test_report_json_and_text(census5):
    data = json.loads(census5.dumps())
    assert data["total"] == 23 and data["per_config_counts"][4] == 5
    assert "1 1 2 1 5 2 2 3 3 3" in " ".join(census5.to_text().split())
