"""Classification tallies over a census, laid out per configuration.

Rows follow the usual summary layout: arrangements constructed, then the split
into irreducible non-empty, empty, reducible over the reals only up to
conjugation, and reducible modulo conjugation.  Verdicts the classifier could
not decide are counted in their own row instead of being folded into the rest.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import catalog
from .config import DEFAULT, Settings
from .extend import CensusReport, enumerate_census, nine3_census
from .moduli.classify import Classification, classify_arrangement

CATEGORIES = ("irreducible", "empty", "reducible_real", "reducible_complex", "unknown")
ROW_TITLES = {
    "constructed": "# arrangements constructed",
    "irreducible": "# irreducible, non-empty",
    "empty": "# empty",
    "reducible_real": "# reducible M, irreducible M^C",
    "reducible_complex": "# reducible M^C",
    "unknown": "# undecided",
}


def category(c: Classification) -> str:
    if c.verdict == "Empty":
        return "empty"
    counts = c.counts
    if counts is None:
        return "unknown"
    over_c, mod_conj = counts
    if over_c == 1:
        return "irreducible"
    return "reducible_real" if mod_conj == 1 else "reducible_complex"


def _classify_one(args) -> tuple[str, Classification]:
    name, A, settings = args
    c = classify_arrangement(A, settings=settings)
    c.presentation = None  # keeps the result small when crossing processes
    return name, c


def classify_members(report: CensusReport, settings: Settings = DEFAULT,
                     jobs: int = 1) -> dict[str, Classification]:
    """Classify every arrangement counted in the per-configuration row."""
    self_dropped = {p.dropped for p in report.self_pairs}
    tasks = [(m.name, m.arrangement, settings) for m in report.members.values()
             if m.name not in self_dropped]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_classify_one, tasks, chunksize=4))
    else:
        results = [_classify_one(t) for t in tasks]
    return dict(sorted(results))


@dataclass
class ClassificationTable:
    k: int
    configs: list[str]
    rows: dict[str, list[int]]
    totals: dict[str, int]
    verdicts: dict[str, Classification] = field(repr=False)

    @property
    def columns(self) -> list[str]:
        return [c.split("_")[-1] for c in self.configs]

    def subtotal(self, row: str) -> int:
        return sum(self.rows[row])

    def records(self) -> list[list[str]]:
        out = [["j"] + self.columns + ["Subtotal", "Total"]]
        for key in ("constructed",) + CATEGORIES:
            vals = self.rows[key]
            out.append([key] + [str(v) for v in vals]
                       + [str(sum(vals)), str(self.totals[key])])
        return out

    def to_text(self) -> str:
        recs = self.records()
        recs = [[ROW_TITLES.get(r[0], r[0])] + r[1:] for r in recs]
        w0 = max(len(r[0]) for r in recs)
        widths = [max(len(r[i]) for r in recs) for i in range(1, len(recs[0]))]
        lines = [f"line through {self.k} double points"]
        for n, r in enumerate(recs):
            lines.append(" ".join([r[0].ljust(w0)] + [c.rjust(w) for c, w in zip(r[1:], widths)]))
            if n <= 1:
                lines.append(" ".join(["-" * w0] + ["-" * w for w in widths]))
        undecided = [n for n, c in self.verdicts.items() if category(c) == "unknown"]
        if undecided:
            lines.append("undecided: " + ", ".join(undecided))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.records())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "configs": self.configs,
            "rows": self.rows,
            "subtotals": {k: sum(v) for k, v in self.rows.items()},
            "totals": self.totals,
            "verdicts": {n: str(c) for n, c in self.verdicts.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def check_sums(self) -> None:
        """Every column and the totals must add up across the verdict rows."""
        for j in range(len(self.configs)):
            if sum(self.rows[c][j] for c in CATEGORIES) != self.rows["constructed"][j]:
                raise AssertionError(f"column {self.configs[j]} does not add up")
        if sum(self.totals[c] for c in CATEGORIES) != self.totals["constructed"]:
            raise AssertionError("totals do not add up")


def tabulate(report: CensusReport, verdicts: dict[str, Classification]) -> ClassificationTable:
    rows = {key: [0] * len(report.configs) for key in ("constructed",) + CATEGORIES}
    col = {c: i for i, c in enumerate(report.configs)}
    for name, c in verdicts.items():
        j = col[report.members[name].config]
        rows["constructed"][j] += 1
        rows[category(c)][j] += 1
    totals = dict.fromkeys(rows, 0)
    for name in report.classes:
        totals["constructed"] += 1
        totals[category(verdicts[name])] += 1
    table = ClassificationTable(report.k, list(report.configs), rows, totals, verdicts)
    table.check_sums()
    return table


def classification_table(k: int, settings: Settings = DEFAULT, jobs: int = 1,
                         nine3: bool = False) -> ClassificationTable:
    report = nine3_census() if nine3 else enumerate_census(k, catalog.ten3(), jobs=jobs)
    return tabulate(report, classify_members(report, settings, jobs))


def plot_table(table: ClassificationTable, path) -> None:
    """Stacked bars of the verdict rows, one bar per configuration."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    colors = {"irreducible": "#4c72b0", "empty": "#bbbbbb", "reducible_real": "#55a868",
              "reducible_complex": "#c44e52", "unknown": "#8172b2"}
    fig, ax = plt.subplots(figsize=(7, 3.6))
    x = list(range(len(table.configs)))
    bottom = [0] * len(x)
    for key in CATEGORIES:
        vals = table.rows[key]
        if not any(vals):
            continue
        ax.bar(x, vals, bottom=bottom, color=colors[key], label=ROW_TITLES[key].lstrip("# "),
               edgecolor="white", linewidth=0.5)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_xticks(x, table.columns)
    ax.set_xlabel("configuration $j$ of $(10_3)_j$")
    ax.set_ylabel("arrangements")
    ax.set_title(f"extension lines through {table.k} double points")
    ax.spines[["top", "right"]].set_visible(False)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)
