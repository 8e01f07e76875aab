"""Built-in configurations: Fano, the three (9_3) and the ten (10_3).

Tables are stored column-wise as strings (one string per line) and the double
point labels as 1-based line pairs, exactly as tabulated in the literature
these catalogs come from.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .arrangement import (
    Arrangement,
    ArrangementError,
    DoublePoint,
    add_line,
    doubles,
    make_extension_line,
)

_TEN3_LINES = {
    1: "123 145 167 890 248 358 269 379 460 570",
    2: "123 145 167 890 248 378 269 359 460 570",
    3: "123 145 167 890 248 368 279 359 460 570",
    4: "123 145 167 890 248 368 259 379 460 570",
    5: "123 145 167 890 248 378 259 469 360 570",
    6: "123 145 167 890 248 378 269 579 350 460",
    7: "123 145 167 289 480 690 578 359 730 246",
    8: "123 145 167 389 580 790 278 659 430 246",
    9: "123 145 167 289 480 690 578 359 270 346",
    10: "123 145 167 389 280 790 578 659 430 246",
}

# rows A..O, columns (10_3)_1 .. (10_3)_10
_TEN3_DOUBLES = {
    "A": "1-4 1-4 1-4 1-4 1-4 1-4 1-5 1-5 1-5 1-6",
    "B": "1-9 1-9 1-9 1-9 1-8 1-8 1-6 1-6 1-6 1-7",
    "C": "1-10 1-10 1-10 1-10 1-10 1-10 1-7 1-8 1-7 1-8",
    "D": "2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4",
    "E": "2-7 2-6 2-6 2-6 2-6 2-6 2-6 2-6 2-6 2-5",
    "F": "2-8 2-7 2-7 2-8 2-9 2-7 2-9 2-7 2-9 2-6",
    "G": "3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4",
    "H": "3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5",
    "I": "3-6 3-8 3-8 3-7 3-7 3-9 3-8 3-9 3-8 3-9",
    "J": "5-8 5-8 5-8 5-8 5-9 5-8 4-9 4-10 4-10 4-10",
    "K": "5-10 5-10 5-10 5-10 5-10 5-9 5-8 5-10 5-8 5-8",
    "L": "6-7 6-7 6-7 6-7 6-7 6-7 6-7 6-10 6-7 6-10",
    "M": "6-9 6-9 6-10 6-10 6-8 6-10 7-10 7-8 7-10 7-9",
    "N": "7-10 7-10 7-9 7-9 7-9 7-9 8-10 7-9 8-9 7-10",
    "O": "8-9 8-9 8-9 8-9 8-10 8-10 9-10 8-9 9-10 8-9",
}

_NINE3_LINES = {
    1: "123 145 167 248 368 578 046 027 035",
    2: "123 145 167 846 827 839 479 356 259",
    3: "123 145 167 824 856 837 925 947 936",
}

# Labels as used by the standard (9_3) extension tables; labels that no
# extension uses are filled in lexicographic order of line pairs.
_NINE3_KNOWN_DOUBLES = {
    1: {"C": "1-6", "D": "4-9", "F": "3-4", "G": "5-8", "H": "2-5", "I": "2-8"},
    2: {"A": "1-7", "C": "5-8", "D": "2-5", "F": "3-6", "H": "4-9", "I": "1-4"},
    3: {"A": "4-9", "B": "3-4", "C": "3-7", "D": "6-7", "E": "2-6", "F": "2-9", "G": "1-5"},
}

_FANO = [["P1", "P2", "P3"], ["P1", "P4", "P5"], ["P1", "P6", "P7"], ["P2", "P4", "P6"],
         ["P2", "P5", "P7"], ["P3", "P4", "P7"], ["P3", "P5", "P6"]]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    arrangement: Arrangement
    labels: dict  # DoublePoint -> letter

    @property
    def letters(self) -> dict:
        return {v: k for k, v in self.labels.items()}

    def extension(self, letters: str | list[str]) -> frozenset:
        inv = self.letters
        try:
            return make_extension_line(inv[c] for c in letters)
        except KeyError as exc:
            raise ArrangementError(f"{self.name} has no double point {exc.args[0]}") from None

    def extend(self, letters: str | list[str]) -> Arrangement:
        return add_line(self.arrangement, self.extension(letters), self.labels)

    def name_of(self, L) -> str:
        return name_arrangement(self.name, L, self.labels)


def name_arrangement(config_name: str, L, labels: dict) -> str:
    try:
        letters = sorted(labels[tuple(sorted(d))] for d in L)
    except KeyError as exc:
        raise ArrangementError(f"double point {exc.args[0]} has no catalog label") from None
    return f"{config_name}.{''.join(letters)}"


def _pair(s: str) -> DoublePoint:
    i, j = (int(x) - 1 for x in s.split("-"))
    return (min(i, j), max(i, j))


def _lines(text: str) -> tuple:
    return tuple(tuple(w) for w in text.split())


def _complete_labels(A: Arrangement, known: dict) -> dict:
    labels = {_pair(v): k for k, v in known.items()}
    free = [d for d in doubles(A) if d not in labels]
    spare = [c for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ" if c not in known]
    for d, c in zip(free, spare):
        labels[d] = c
    return labels


@lru_cache(maxsize=None)
def _entries() -> dict:
    out = {}
    fano = Arrangement(tuple(tuple(l) for l in _FANO))
    out["fano"] = CatalogEntry("fano", fano, {})
    for j, rows in _NINE3_LINES.items():
        A = Arrangement(_lines(rows))
        name = f"(9_3)_{j}"
        out[name] = CatalogEntry(name, A, _complete_labels(A, _NINE3_KNOWN_DOUBLES[j]))
    for j, rows in _TEN3_LINES.items():
        A = Arrangement(_lines(rows))
        labels = {_pair(row.split()[j - 1]): letter for letter, row in _TEN3_DOUBLES.items()}
        name = f"(10_3)_{j}"
        out[name] = CatalogEntry(name, A, labels)
    return out


def names() -> list[str]:
    return list(_entries())


def ten3() -> list[CatalogEntry]:
    return [_entries()[f"(10_3)_{j}"] for j in range(1, 11)]


def nine3() -> list[CatalogEntry]:
    return [_entries()[f"(9_3)_{j}"] for j in range(1, 4)]


_NAME_RE = re.compile(r"^\((\d+)_3\)_(\d+)(?:\.([A-Z]+))?$")


def normalize_name(name: str) -> str:
    s = name.strip().replace(" ", "").replace("{", "").replace("}", "")
    if s.lower() == "fano":
        return "fano"
    m = _NAME_RE.match(s)
    if m:
        base = f"({m.group(1)}_3)_{int(m.group(2))}"
        return base + (f".{''.join(sorted(m.group(3)))}" if m.group(3) else "")
    return s


def get(name: str) -> CatalogEntry:
    key = normalize_name(name)
    try:
        return _entries()[key]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None


def lookup(name: str) -> Arrangement:
    """Resolve a catalog name, including extension names like ``(10_3)_7.ADO``."""
    key = normalize_name(name)
    base, _, letters = key.partition(".")
    entry = get(base)
    return entry.extend(letters) if letters else entry.arrangement
