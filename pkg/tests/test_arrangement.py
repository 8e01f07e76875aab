from itertools import combinations

import pytest

from olext import catalog
from olext.arrangement import (Arrangement, ArrangementError, add_line, doubles, emit_table,
                               from_json, is_n3_configuration, is_reductive, parse_table,
                               remove_line, to_json)
from olext.extend import ol_ext
from olext.symmetry import find_isomorphism

FANO_TABLE = """
L1 L2 L3 L4 L5 L6 L7
1  1  1  2  2  3  3
2  4  6  4  5  4  5
3  5  7  6  7  7  6
"""

ANO_TABLE = """
L1 L2 L3 L4 L5 L6 L7 L8 L9 L10 L11
1  1  1  8  2  3  2  4  3  5   A
2  4  6  9  4  7  5  6  6  7   N
3  5  7  0  8  8  9  9  0  0   O
A  .  .  A  .  .  N  O  N  O
"""


def brute_doubles(A):
    return [(i, j) for i in range(len(A)) for j in range(i + 1, len(A))
            if not set(A.lines[i]) & set(A.lines[j])]


def test_fano_table_parses_to_seven_triples():
    A = parse_table(FANO_TABLE)
    assert len(A) == 7 and all(len(l) == 3 for l in A.lines)
    assert is_n3_configuration(A)
    assert doubles(A) == []


def test_single_column_table():
    A = parse_table("L1\nP1\nP2\nP3\n")
    assert A.lines == (("P1", "P2", "P3"),)


def test_empty_cell_in_the_middle_of_a_row():
    A = parse_table(ANO_TABLE)
    assert len(A) == 11
    assert set(A.lines[10]) == {"A", "N", "O"}
    assert A.lines[3] == ("8", "9", "0", "A")
    assert A.lines[4] == ("2", "4", "8")


@pytest.mark.parametrize("bad", ["", "L1 L2\n1 1\n1 2\n", "L1 L2\n1 1\n2 2\n", "L1\n1 2\n"])
def test_malformed_tables(bad):
    with pytest.raises(ArrangementError):
        parse_table(bad)


def test_table_round_trip():
    for name in catalog.names():
        A = catalog.lookup(name)
        B = parse_table(emit_table(A))
        assert B.lines == A.lines and B.names == A.names
        assert emit_table(B) == emit_table(A)
        assert from_json(to_json(A)).lines == A.lines


def test_doubles_of_ten3_match_brute_force():
    for e in catalog.ten3():
        A = e.arrangement
        assert doubles(A) == brute_doubles(A)
        assert len(doubles(A)) == 45 - 30


def test_doubles_labels_of_first_configuration():
    e = catalog.get("(10_3)_1")
    assert e.labels[(0, 3)] == "A"
    assert e.labels[(7, 8)] == "O"
    assert sorted(e.labels.values()) == list("ABCDEFGHIJKLMNO")


def test_disjoint_pair_is_a_double():
    A = Arrangement((("1", "2", "3"), ("4", "5", "6"), ("1", "4", "7")))
    assert (0, 1) in doubles(A)


def test_add_line_reproduces_reference_tables():
    A = catalog.lookup("(10_3)_5.ANO")
    assert A == parse_table(ANO_TABLE)
    B = catalog.lookup("(10_3)_7.ADO")
    assert set(B.lines[-1]) == {"A", "D", "O"}
    assert not is_reductive(A)
    assert not is_n3_configuration(A) and len(A.points) == 13


def test_add_line_keeps_old_incidences():
    e = catalog.get("(10_3)_3")
    A = e.arrangement
    for L in ol_ext(4, A)[:5]:
        B = add_line(A, L, e.labels)
        old = set(A.points)
        for i, j in combinations(range(len(A)), 2):
            assert set(B.lines[i]) & set(B.lines[j]) & old == set(A.lines[i]) & set(A.lines[j])


def test_add_empty_line_is_reductive():
    A = catalog.lookup("(10_3)_1")
    B = add_line(A, [])
    assert len(B) == 11 and B.lines[-1] == ()
    assert is_reductive(B)


def test_add_line_errors():
    e = catalog.get("(10_3)_5")
    A = e.arrangement
    with pytest.raises(ArrangementError):
        add_line(A, [(0, 1)])  # lines 1 and 2 meet in point 0
    d = doubles(A)
    shared = [(x, y) for x, y in combinations(d, 2) if set(x) & set(y)][0]
    with pytest.raises(ArrangementError):
        add_line(A, shared)


def test_remove_line_inverts_add_line():
    e = catalog.get("(10_3)_5")
    B = catalog.lookup("(10_3)_5.ANO")
    C = remove_line(B, 10)
    assert find_isomorphism(C, e.arrangement) is not None
    assert C == e.arrangement


def test_remove_line_drops_new_doubles():
    A = catalog.lookup("(10_3)_1")
    B = remove_line(A, 0)
    assert len(B) == 9
    assert not set(A.lines[0]) & set(B.points)


def test_remove_line_keeps_quadruple_points():
    lines = (("P", "1"), ("P", "2"), ("P", "3"), ("P", "4"))
    A = Arrangement(lines)
    B = remove_line(A, 0)
    assert B.multiplicity("P") == 3
    with pytest.raises(ArrangementError):
        remove_line(A, 7)


def test_validate_convention():
    A = Arrangement((("1", "2"), ("1", "3")))
    with pytest.raises(ArrangementError):
        A.validate()
    catalog.lookup("(10_3)_2").validate()


def test_reductive_and_configuration_flags():
    for e in catalog.ten3() + catalog.nine3():
        assert is_n3_configuration(e.arrangement)
        assert not is_reductive(e.arrangement)
    assert is_n3_configuration(catalog.lookup("fano"))
