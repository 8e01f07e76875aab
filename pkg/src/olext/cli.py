"""Command line front end.

Exit status is 0 on success, 1 on a domain error (unknown name, unreadable
file, malformed table or plan) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from .arrangement import Arrangement, ArrangementError, doubles, emit_table, from_json, parse_table
from .config import DEFAULT, ConfigError, load_config
from .extend import enumerate_census, nine3_census, ol_ext
from .moduli import (PlanError, build, classify_arrangement, parse_plan, reduce,
                     shipped_plan)
from .moduli.plan import auto_plan
from .poly.irreducible import absolutely_irreducible
from .poly.mpoly import parse
from .symmetry import automorphism_group, find_isomorphism, verify_map


class DomainError(Exception):
    pass


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _arrangement(ref: str) -> tuple[Arrangement, str | None]:
    """A catalog name (with optional extension letters) or an arrangement file."""
    if os.path.exists(ref):
        text = _read(ref)
        A = from_json(text) if ref.endswith(".json") else parse_table(text)
        return A, None
    try:
        return catalog.lookup(ref), catalog.normalize_name(ref)
    except KeyError:
        raise DomainError(f"{ref!r} is neither a file nor a catalog name") from None


def _plan(args, A: Arrangement, name: str | None):
    if args.plan is None:
        return None
    if args.plan == "shipped":
        if name is None:
            raise DomainError("shipped plans are keyed by catalog name")
        try:
            return shipped_plan(name)
        except KeyError as exc:
            raise DomainError(exc.args[0]) from None
    return parse_plan(_read(args.plan), A)


# -- subcommands -------------------------------------------------------------------

def cmd_catalog(args, settings) -> None:
    if args.action == "list":
        rows = []
        for n in catalog.names():
            A = catalog.lookup(n)
            rows.append({"name": n, "lines": len(A), "points": len(A.points),
                         "doubles": len(doubles(A))})
        text = "\n".join(f"{r['name']:10} lines={r['lines']} points={r['points']} "
                         f"doubles={r['doubles']}" for r in rows)
        _emit(args, rows, text)
        return
    if not args.name:
        raise DomainError("catalog show needs a NAME")
    A, _ = _arrangement(args.name)
    _emit(args, {"name": args.name, "lines": [list(l) for l in A.lines], "names": list(A.names)},
          emit_table(A))


def _letter(name: str | None, d) -> str | None:
    if name is None:
        return None
    base = name.split(".")[0]
    return catalog.get(base).labels.get(d)


def cmd_doubles(args, settings) -> None:
    A, name = _arrangement(args.ref)
    rows = []
    for d in doubles(A):
        rows.append({"lines": [A.names[d[0]], A.names[d[1]]], "label": _letter(name, d)})
    text = "\n".join(f"{r['label'] or '-'}  {r['lines'][0]} {r['lines'][1]}" for r in rows)
    _emit(args, {"count": len(rows), "doubles": rows}, f"{len(rows)} double points\n{text}")


def cmd_aut(args, settings) -> None:
    A, _ = _arrangement(args.ref)
    G = automorphism_group(A)
    hist = " ".join(f"{k}:{v}" for k, v in G.element_order_histogram.items())
    gens = "\n".join("  " + " ".join(f"{A.names[i]}->{A.names[j]}"
                                     for i, j in enumerate(g.line_map) if i != j)
                     for g in G.generators)
    _emit(args, G.to_json(), f"order {G.order}\nelement orders {hist}\ngenerators\n{gens}")


def cmd_iso(args, settings) -> None:
    A, _ = _arrangement(args.first)
    B, _ = _arrangement(args.second)
    phi = find_isomorphism(A, B)
    if phi is None:
        _emit(args, {"isomorphic": False, "witness": None}, "none")
        return
    if not verify_map(A, B, phi):
        raise DomainError("internal error: witness failed verification")
    w = phi.to_json(A, B)
    lines = " ".join(f"{k}->{v}" for k, v in w["line_map"].items())
    points = " ".join(f"{k}->{v}" for k, v in sorted(w["point_map"].items()))
    _emit(args, {"isomorphic": True, "witness": w}, f"lines  {lines}\npoints {points}")


def cmd_extend(args, settings) -> None:
    entry = catalog.get(args.name)
    reps = ol_ext(args.k, entry.arrangement, entry.labels or None)
    names = sorted(entry.name_of(L) if entry.labels else str(sorted(L)) for L in reps)
    _emit(args, {"config": entry.name, "k": args.k, "count": len(names), "arrangements": names},
          f"{len(names)} orbits\n" + "\n".join(names))


def cmd_census(args, settings) -> None:
    if args.nine3:
        report = nine3_census()
    else:
        if args.k is None:
            raise DomainError("census needs --k unless --nine3 is given")
        report = enumerate_census(args.k, catalog.ten3(), jobs=args.jobs)
    _emit(args, report.to_json(), report.to_text())


def cmd_irred(args, settings) -> None:
    out = []
    text = []
    for raw in _read(args.polyfile).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            f = parse(line)
            res = absolutely_irreducible(f, settings.primes, settings.values)
        except ValueError as exc:
            raise DomainError(f"{line}: {exc}") from None
        rec = {"polynomial": str(f), **res.to_json()}
        out.append(rec)
        cert = res.certificate
        detail = ""
        if cert is not None:
            detail = f" keep={cert.keep} at {cert.assignment} mod {cert.p}"
        text.append(f"{res}  {f}{detail}")
    _emit(args, out, "\n".join(text))


def cmd_moduli(args, settings) -> None:
    A, name = _arrangement(args.ref)
    plan = _plan(args, A, name) or auto_plan(A)
    M = reduce(build(A, plan))
    data = M.to_json()
    text = [f"params: {', '.join(M.params)}", "plan:"]
    text += ["  " + s for s in plan.to_json(A)]
    text += ["constraints:"] + [f"  {f}" for f in M.constraints]
    text += ["reduced:"] + [f"  {h}" for h in M.reduced]
    text += [f"nondegeneracy: {len(M.nondegeneracy)} polynomials"]
    # presentation JSON is the primary output of this subcommand
    _emit(args, data, "\n".join(text))


def cmd_classify(args, settings) -> None:
    A, name = _arrangement(args.ref)
    plan = _plan(args, A, name)
    c = classify_arrangement(A, plan, settings=settings)
    _emit(args, c.to_json(), str(c))


def cmd_report(args, settings) -> None:
    from .report import classification_table, plot_table

    table = classification_table(args.table, settings, jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)
    stem = os.path.join(args.out, f"table{args.table}")
    with open(stem + ".csv", "w") as fh:
        fh.write(table.to_csv())
    plot_table(table, stem + ".png")
    _emit(args, table.to_json(), table.to_text())


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--config", help="key=value file with search bounds")

    p = argparse.ArgumentParser(prog="olext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", parents=[common], help="list or show built-in arrangements")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("doubles", parents=[common], help="double points of an arrangement")
    s.add_argument("ref", metavar="FILE|NAME")
    s.set_defaults(func=cmd_doubles)

    s = sub.add_parser("aut", parents=[common], help="automorphism group")
    s.add_argument("ref", metavar="FILE|NAME")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("iso", parents=[common], help="isomorphism witness or none")
    s.add_argument("first", metavar="FILE1")
    s.add_argument("second", metavar="FILE2")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("extend", parents=[common], help="orbit representatives of extension lines")
    s.add_argument("name")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("census", parents=[common], help="one-line extension census")
    s.add_argument("--k", type=int, choices=[3, 4, 5])
    s.add_argument("--nine3", action="store_true", help="census over the (9_3) configurations")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("irred", parents=[common], help="absolute irreducibility certificates")
    s.add_argument("polyfile")
    s.set_defaults(func=cmd_irred)

    for cmd, func, desc in (("moduli", cmd_moduli, "moduli presentation"),
                            ("classify", cmd_classify, "moduli classification")):
        s = sub.add_parser(cmd, parents=[common], help=desc)
        s.add_argument("ref", metavar="FILE|NAME")
        s.add_argument("--plan", metavar="PLANFILE",
                       help="plan file, or 'shipped' for a plan bundled with the package")
        s.set_defaults(func=func)

    s = sub.add_parser("report", parents=[common], help="classification tallies per configuration")
    s.add_argument("--table", type=int, choices=[3, 4, 5], required=True,
                   help="number of double points on the extension line")
    s.add_argument("--out", default=".", help="directory for the CSV table and PNG figure")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = load_config(args.config) if args.config else DEFAULT
        args.func(args, settings)
    except (DomainError, ArrangementError, PlanError, ConfigError, KeyError, OSError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"olext: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
