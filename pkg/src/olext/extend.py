"""One-line extension census over a catalog of configurations.

For every configuration C and every orbit of valid k-subsets of Doubles(C)
under Aut(C) the extension C u L is built.  Two extensions can only be
isomorphic without being related by Aut(C) if deleting some original line of
one of them gives back a configuration of the same type (the exchange
lemmas), so only those *flagged* arrangements are compared, by canonical form.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from . import catalog
from .arrangement import Arrangement, add_line, doubles, is_n3_configuration, remove_line
from .catalog import CatalogEntry, name_arrangement
from .symmetry import (
    ArrangementMap,
    automorphism_group,
    canonical_form,
    find_isomorphism,
    orbit_representatives,
)


def valid_extension(A: Arrangement, L) -> bool:
    used = [i for d in L for i in d]
    return len(set(used)) == len(used)


def valid_subsets(A: Arrangement, k: int) -> list[frozenset]:
    return [frozenset(c) for c in combinations(doubles(A), k) if valid_extension(A, c)]


def ol_ext(k: int, A: Arrangement, labels: dict | None = None) -> list[frozenset]:
    """Aut(A)-orbit representatives of the valid k-subsets of double points."""
    key = None
    if labels:
        key = lambda L: tuple(sorted(labels[d] for d in L))  # noqa: E731
    return orbit_representatives(automorphism_group(A), valid_subsets(A, k), key=key)


def _flagged(ext: Arrangement, n_original: int) -> bool:
    """Does deleting some original line leave an (n_3) configuration?"""
    return any(is_n3_configuration(remove_line(ext, i)) for i in range(n_original))


@dataclass
class Member:
    name: str
    config: str
    extension: frozenset
    arrangement: Arrangement
    flagged: bool
    canon: str | None = None


@dataclass
class IdentifiedPair:
    kept: str
    dropped: str
    witness: ArrangementMap
    kind: str  # "self" or "cross"

    def to_json(self, members: dict) -> dict:
        A, B = members[self.dropped].arrangement, members[self.kept].arrangement
        return {"kept": self.kept, "dropped": self.dropped, "kind": self.kind,
                "witness": self.witness.to_json(A, B)}


@dataclass
class CensusReport:
    k: int
    configs: list[str]
    raw_counts: list[int]
    per_config_counts: list[int]
    self_pairs: list[IdentifiedPair]
    identified_pairs: list[IdentifiedPair]
    members: dict = field(repr=False)
    classes: list[str] = field(default_factory=list)
    tallies: dict | None = None

    @property
    def raw_subtotal(self) -> int:
        return sum(self.raw_counts)

    @property
    def subtotal(self) -> int:
        return sum(self.per_config_counts)

    @property
    def total(self) -> int:
        return len(self.classes)

    @property
    def flagged(self) -> list[str]:
        return [m.name for m in self.members.values() if m.flagged]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "configs": self.configs,
            "raw_counts": self.raw_counts,
            "raw_subtotal": self.raw_subtotal,
            "per_config_counts": self.per_config_counts,
            "subtotal": self.subtotal,
            "total": self.total,
            "self_exchange_pairs": [p.to_json(self.members) for p in self.self_pairs],
            "identified_pairs": [p.to_json(self.members) for p in self.identified_pairs],
            "flagged": self.flagged,
            "arrangements": self.classes,
            "tallies": self.tallies,
        }

    def to_text(self) -> str:
        short = [c.split("_")[-1] for c in self.configs]
        head = ["j"] + short + ["Subtotal", "Total"]
        rows = [
            ["raw orbits"] + [str(c) for c in self.raw_counts] + [str(self.raw_subtotal), ""],
            ["constructed"] + [str(c) for c in self.per_config_counts]
            + [str(self.subtotal), str(self.total)],
        ]
        w0 = max(len(r[0]) for r in rows + [head])
        widths = [max(len(r[i]) for r in rows + [head]) for i in range(1, len(head))]

        def fmt(r):
            return " ".join([r[0].ljust(w0)] + [c.rjust(w) for c, w in zip(r[1:], widths)])

        out = [f"k = {self.k}", fmt(head), fmt(["-" * w0] + ["-" * w for w in widths])]
        out += [fmt(r) for r in rows]
        out.append(f"self-exchange identifications: {len(self.self_pairs)}")
        out.append(f"cross-configuration identifications: {len(self.identified_pairs)}")
        for p in self.self_pairs + self.identified_pairs:
            out.append(f"  {p.dropped} ~ {p.kept}")
        return "\n".join(out) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _config_members(args) -> list[Member]:
    entry, k = args
    A = entry.arrangement
    out = []
    for L in ol_ext(k, A, entry.labels):
        ext = add_line(A, L, entry.labels)
        flagged = _flagged(ext, len(A))
        m = Member(name_arrangement(entry.name, L, entry.labels), entry.name, L, ext, flagged)
        if flagged:
            m.canon = canonical_form(ext).hex()
        out.append(m)
    return out


def enumerate_census(k: int, entries: list[CatalogEntry] | None = None,
                     jobs: int = 1) -> CensusReport:
    """Run the enumeration for extension lines through ``k`` double points."""
    entries = entries if entries is not None else catalog.ten3()
    tasks = [(e, k) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            per_config = list(pool.map(_config_members, tasks))
    else:
        per_config = [_config_members(t) for t in tasks]

    members = {m.name: m for ms in per_config for m in ms}
    first_by_canon: dict[str, Member] = {}
    self_pairs, cross_pairs = [], []
    dropped = set()
    for ms in per_config:
        for m in ms:
            if not m.flagged:
                continue
            rep = first_by_canon.get(m.canon)
            if rep is None:
                first_by_canon[m.canon] = m
                continue
            phi = find_isomorphism(m.arrangement, rep.arrangement)
            kind = "self" if rep.config == m.config else "cross"
            (self_pairs if kind == "self" else cross_pairs).append(
                IdentifiedPair(rep.name, m.name, phi, kind))
            dropped.add(m.name)

    raw = [len(ms) for ms in per_config]
    self_dropped = {p.dropped for p in self_pairs}
    post = [sum(1 for m in ms if m.name not in self_dropped) for ms in per_config]
    classes = [m.name for ms in per_config for m in ms if m.name not in dropped]
    return CensusReport(k, [e.name for e in entries], raw, post, self_pairs, cross_pairs,
                        members, classes)


def nine3_census() -> CensusReport:
    return enumerate_census(3, catalog.nine3())


def brute_force_classes(k: int, entries: list[CatalogEntry] | None = None) -> set[str]:
    """Canonical forms of every valid extension, with no symmetry reduction."""
    entries = entries if entries is not None else catalog.ten3()
    out = set()
    for e in entries:
        for L in valid_subsets(e.arrangement, k):
            out.add(canonical_form(add_line(e.arrangement, L)).hex())
    return out
