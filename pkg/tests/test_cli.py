import json

import pytest

from olext.arrangement import emit_table
from olext import catalog
from olext.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_catalog_list(capsys):
    rc, out, _ = run(capsys, "catalog", "list")
    assert rc == 0 and "(10_3)_10" in out and "doubles=15" in out


def test_catalog_show_json(capsys):
    rc, out, _ = run(capsys, "catalog", "show", "(10_3)_5.ANO", "--json")
    data = json.loads(out)
    assert rc == 0 and sorted(data["lines"][10]) == ["A", "N", "O"]


def test_doubles(capsys):
    rc, out, _ = run(capsys, "doubles", "(10_3)_1", "--json")
    data = json.loads(out)
    assert data["count"] == 15
    assert data["doubles"][0] == {"lines": ["L1", "L4"], "label": "A"}


def test_aut(capsys):
    rc, out, _ = run(capsys, "aut", "(10_3)_10")
    assert rc == 0 and out.startswith("order 10\n")


def test_iso_from_files(capsys, tmp_path):
    a, b = tmp_path / "bdl.txt", tmp_path / "bik.txt"
    a.write_text(emit_table(catalog.lookup("(10_3)_5.BDL")))
    b.write_text(emit_table(catalog.lookup("(10_3)_5.BIK")))
    rc, out, _ = run(capsys, "iso", str(a), str(b), "--json")
    data = json.loads(out)
    assert rc == 0 and data["isomorphic"] and len(data["witness"]["line_map"]) == 11


def test_iso_none(capsys):
    rc, out, _ = run(capsys, "iso", "(10_3)_1", "(10_3)_2")
    assert rc == 0 and out.strip() == "none"


def test_extend(capsys):
    rc, out, _ = run(capsys, "extend", "(10_3)_1", "--k", "5")
    assert rc == 0 and "(10_3)_1.AEIKO" in out


def test_census_k5(capsys):
    rc, out, _ = run(capsys, "census", "--k", "5", "--json")
    data = json.loads(out)
    assert data["per_config_counts"] == [1, 1, 2, 1, 5, 2, 2, 3, 3, 3]
    assert data["total"] == 23


def test_census_is_deterministic(capsys):
    first = run(capsys, "census", "--k", "5")[1]
    assert run(capsys, "census", "--k", "5", "--jobs", "2")[1] == first


def test_census_nine3(capsys):
    rc, out, _ = run(capsys, "census", "--nine3", "--json")
    assert json.loads(out)["total"] == 11


def test_irred(capsys, tmp_path):
    f = tmp_path / "polys.txt"
    f.write_text("# one per line\n"
                 "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1\n"
                 "a^2 - 5*b^2\n")
    rc, out, _ = run(capsys, "irred", str(f), "--json")
    data = json.loads(out)
    assert rc == 0 and [d["verdict"] for d in data] == ["Certified", "Unknown"]


def test_moduli_json(capsys):
    rc, out, _ = run(capsys, "moduli", "(10_3)_5.ANO", "--plan", "shipped", "--json")
    data = json.loads(out)
    assert rc == 0 and data["params"] == ["a", "b"]
    assert data["reduced"][0].startswith("a^4*b^2")


def test_classify_with_plan_file(capsys, tmp_path):
    from olext.moduli import shipped_plan
    plan = tmp_path / "ano.plan"
    plan.write_text(shipped_plan("(10_3)_5.ANO").to_text(catalog.lookup("(10_3)_5.ANO")))
    rc, out, _ = run(capsys, "classify", "(10_3)_5.ANO", "--plan", str(plan))
    assert rc == 0 and out.strip() == "Irreducible(1)"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "olext.cfg"
    cfg.write_text("max_prime = 97\ntrial_d = 5\n")
    rc, out, _ = run(capsys, "classify", "(10_3)_7.ADO", "--config", str(cfg))
    assert rc == 0 and out.strip() == "Reducible(2, 2, dim 1)"


@pytest.mark.parametrize("argv", [
    ["aut", "(10_3)_99"],
    ["doubles", "no-such-file"],
    ["irred", "/nonexistent/polys.txt"],
    ["classify", "(10_3)_1", "--plan", "shipped"],
    ["catalog", "show"],
    ["census"],
])
def test_domain_errors(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 1 and err.startswith("olext: error:")


def test_malformed_plan(capsys, tmp_path):
    plan = tmp_path / "bad.plan"
    plan.write_text("basis P1 [1:0:0]\nnonsense\n")
    rc, _, err = run(capsys, "moduli", "(10_3)_1", "--plan", str(plan))
    assert rc == 1 and "cannot parse" in err


def test_malformed_table(capsys, tmp_path):
    t = tmp_path / "bad.txt"
    t.write_text("L1 L2\n1 1\n2 2\n")
    rc, _, _ = run(capsys, "aut", str(t))
    assert rc == 1


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["census", "--k", "7"], ["report"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2
