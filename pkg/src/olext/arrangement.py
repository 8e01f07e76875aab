"""Combinatorial line arrangements.

An arrangement is an ordered list of lines, each line a tuple of point labels.
Points are implicit: a label is a point if it appears on some line.  Two lines
share at most one label.  Pairs of lines sharing no label are *double points*;
they carry no name of their own and are addressed by the pair of line indices.

Line indices are 0-based throughout the API; the default display names are
``L1 .. Ln``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

DoublePoint = tuple[int, int]
ExtensionLine = frozenset  # frozenset[DoublePoint]


class ArrangementError(ValueError):
    """Raised on malformed arrangements or illegal surgery."""


@dataclass(frozen=True, eq=False)
class Arrangement:
    lines: tuple[tuple[str, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        lines = tuple(tuple(str(p) for p in line) for line in self.lines)
        names = tuple(self.names) or tuple(f"L{i + 1}" for i in range(len(lines)))
        if len(names) != len(lines):
            raise ArrangementError("number of names does not match number of lines")
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "names", names)
        for i, line in enumerate(lines):
            if len(set(line)) != len(line):
                raise ArrangementError(f"duplicate point on line {names[i]}")
        sets = self.line_sets
        for i, j in combinations(range(len(lines)), 2):
            if len(sets[i] & sets[j]) > 1:
                raise ArrangementError(
                    f"lines {names[i]} and {names[j]} share more than one point"
                )

    # equality ignores names and the order of points within a line
    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.line_sets == other.line_sets

    def __hash__(self):
        return hash(self.line_sets)

    def __len__(self):
        return len(self.lines)

    def __repr__(self):
        body = " ".join("{" + ",".join(line) + "}" for line in self.lines)
        return f"Arrangement({body})"

    @cached_property
    def line_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(line) for line in self.lines)

    @cached_property
    def points(self) -> tuple[str, ...]:
        """Point labels in order of first appearance."""
        seen = {}
        for line in self.lines:
            for p in line:
                seen.setdefault(p, None)
        return tuple(seen)

    @cached_property
    def point_lines(self) -> dict[str, tuple[int, ...]]:
        """Map each point label to the sorted indices of the lines through it."""
        out: dict[str, list[int]] = {p: [] for p in self.points}
        for i, line in enumerate(self.lines):
            for p in line:
                out[p].append(i)
        return {p: tuple(v) for p, v in out.items()}

    def multiplicity(self, p: str) -> int:
        return len(self.point_lines[p])

    def meet(self, i: int, j: int) -> str | None:
        common = self.line_sets[i] & self.line_sets[j]
        return next(iter(common)) if common else None

    def line_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ArrangementError(f"no line named {name!r}") from None

    def validate(self) -> None:
        """Enforce the convention that every named point lies on >= 3 lines."""
        for p, ls in self.point_lines.items():
            if len(ls) < 3:
                raise ArrangementError(f"point {p} lies on only {len(ls)} line(s)")

    def relabel(self, point_map: Mapping[str, str] | None = None,
                line_perm: Sequence[int] | None = None) -> "Arrangement":
        """Rename points and reorder lines; ``line_perm[i]`` is the new index of line i."""
        pm = point_map or {}
        lines = [tuple(pm.get(p, p) for p in line) for line in self.lines]
        names = list(self.names)
        if line_perm is not None:
            new_lines = [None] * len(lines)
            new_names = [None] * len(lines)
            for i, j in enumerate(line_perm):
                new_lines[j] = lines[i]
                new_names[j] = f"L{j + 1}"
            lines, names = new_lines, new_names
        return Arrangement(tuple(lines), tuple(names))


def doubles(A: Arrangement) -> list[DoublePoint]:
    """Unordered pairs of lines with empty intersection, lexicographically sorted."""
    sets = A.line_sets
    return [(i, j) for i, j in combinations(range(len(sets)), 2) if not sets[i] & sets[j]]


def make_extension_line(members: Iterable[DoublePoint]) -> ExtensionLine:
    """Build an extension line; repeated or overlapping members are rejected."""
    members = [tuple(sorted(d)) for d in members]
    if len(set(members)) != len(members):
        raise ArrangementError("repeated double point in extension line")
    used = [i for d in members for i in d]
    if len(set(used)) != len(used):
        raise ArrangementError("two double points of the extension share a line")
    return frozenset(members)


def _fresh_labels(taken: set[str]):
    def names():
        k = 1
        while True:
            for combo in _letter_words(k):
                yield combo
            k += 1

    for name in names():
        if name not in taken:
            yield name


def _letter_words(k: int):
    letters = [chr(ord("A") + i) for i in range(26)]
    if k == 1:
        yield from letters
        return
    for head in _letter_words(k - 1):
        for c in letters:
            yield head + c


def add_line(A: Arrangement, L: Iterable[DoublePoint],
             labels: Mapping[DoublePoint, str] | None = None,
             name: str | None = None) -> Arrangement:
    """One-line extension of ``A`` through the double points ``L``.

    Each consumed double point becomes a new point label appended to both of
    its lines and to the new line.  Labels come from ``labels`` when given,
    otherwise fresh labels A, B, C, ... that do not clash with existing points.
    """
    L = sorted(make_extension_line(L))
    dset = set(doubles(A))
    for d in L:
        if d not in dset:
            raise ArrangementError(f"{d} is not a double point")
    fresh = _fresh_labels(set(A.points))
    new_line = []
    lines = [list(line) for line in A.lines]
    for d in L:
        lab = labels[d] if labels is not None and d in labels else next(fresh)
        if lab in A.points or lab in new_line:
            raise ArrangementError(f"label {lab} already in use")
        lines[d[0]].append(lab)
        lines[d[1]].append(lab)
        new_line.append(lab)
    lines.append(new_line)
    names = A.names + (name or f"L{len(A) + 1}",)
    return Arrangement(tuple(tuple(line) for line in lines), names)


def remove_line(A: Arrangement, i: int) -> Arrangement:
    """Delete line ``i``; points left on exactly two lines become unnamed doubles."""
    if not 0 <= i < len(A):
        raise ArrangementError(f"line index {i} out of range")
    keep = [line for j, line in enumerate(A.lines) if j != i]
    count: dict[str, int] = {}
    for line in keep:
        for p in line:
            count[p] = count.get(p, 0) + 1
    gone = {p for p in A.lines[i] if count.get(p, 0) == 2}
    lines = tuple(tuple(p for p in line if p not in gone) for line in keep)
    names = tuple(n for j, n in enumerate(A.names) if j != i)
    return Arrangement(lines, names)


def is_reductive(A: Arrangement) -> bool:
    return any(len(line) <= 2 for line in A.lines)


def is_n3_configuration(A: Arrangement) -> bool:
    if len(A.points) != len(A):
        return False
    if any(len(line) != 3 for line in A.lines):
        return False
    return all(len(ls) == 3 for ls in A.point_lines.values())


# --- text and JSON formats -------------------------------------------------

EMPTY_CELL = "."


def parse_table(text: str) -> Arrangement:
    """Parse an arrangement table: header of line names, then rows of points.

    Columns are positional; a row may stop early (trailing cells omitted) and
    ``.`` marks an empty cell in the middle of a row.  Rows made only of
    dashes are treated as rules and skipped.
    """
    rows = []
    for raw in text.splitlines():
        raw = raw.split("#", 1)[0].strip()
        if not raw or set(raw) <= set("-=_| "):
            continue
        rows.append(raw.split())
    if not rows:
        raise ArrangementError("empty arrangement table")
    names = rows[0]
    cols: list[list[str]] = [[] for _ in names]
    for r, row in enumerate(rows[1:], start=2):
        if len(row) > len(names):
            raise ArrangementError(f"row {r} has more cells than there are lines")
        for c, cell in enumerate(row):
            if cell != EMPTY_CELL:
                cols[c].append(cell)
    return Arrangement(tuple(tuple(c) for c in cols), tuple(names))


def emit_table(A: Arrangement) -> str:
    height = max((len(line) for line in A.lines), default=0)
    cells = [list(A.names)]
    for r in range(height):
        cells.append([line[r] if r < len(line) else EMPTY_CELL for line in A.lines])
    for row in cells[1:]:
        while row and row[-1] == EMPTY_CELL:
            row.pop()
    width = max(len(c) for row in cells for c in row)
    out = []
    for k, row in enumerate(cells):
        out.append(" ".join(c.ljust(width) for c in row).rstrip())
        if k == 0:
            out.append("-" * len(out[0]))
    return "\n".join(out) + "\n"


def to_json(A: Arrangement) -> dict:
    return {"lines": [list(line) for line in A.lines], "names": list(A.names)}


def from_json(data: dict | str) -> Arrangement:
    if isinstance(data, str):
        data = json.loads(data)
    return Arrangement(tuple(tuple(l) for l in data["lines"]), tuple(data.get("names", ())))
