"""Construction plans: the order in which points and lines are placed.

Plan text, one step per line::

    basis P9 [1:0:0]
    join L10 = PO + P0
    meet P5 = L10 ^ L7
    free L1 1
    free L2 1 = [1:-1:b]

Point names may be written bare or with a ``P`` prefix.  A ``free`` step with
``k`` parameters places an element incident to ``2 - k`` placed elements;
without explicit coordinates the chart is chosen by :func:`olext.moduli.build`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from ..arrangement import Arrangement

BASIS_COORDS = ("[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]")


class PlanError(ValueError):
    """A construction plan is malformed or does not fit its arrangement."""


@dataclass(frozen=True)
class Step:
    op: str  # basis | join | meet | free
    target: str
    args: tuple[str, ...] = ()
    coords: str | None = None
    nparams: int = 0

    def to_text(self, A: Arrangement | None = None) -> str:
        name = _display(self.target, A)
        if self.op == "basis":
            return f"basis {name} {self.coords}"
        if self.op in ("join", "meet"):
            sym = "+" if self.op == "join" else "^"
            x, y = (_display(a, A) for a in self.args)
            return f"{self.op} {name} = {x} {sym} {y}"
        tail = f" = {self.coords}" if self.coords else ""
        return f"free {name} {self.nparams}{tail}"


@dataclass(frozen=True)
class ConstructionPlan:
    steps: tuple[Step, ...]
    note: str = field(default="", compare=False)

    @property
    def basis(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if s.op == "basis")

    @property
    def order(self) -> list[str]:
        return [s.target for s in self.steps]

    @property
    def nparams(self) -> int:
        return sum(s.nparams for s in self.steps if s.op == "free")

    def to_text(self, A: Arrangement | None = None) -> str:
        return "\n".join(s.to_text(A) for s in self.steps) + "\n"

    def to_json(self, A: Arrangement | None = None) -> list[str]:
        return [s.to_text(A) for s in self.steps]


def _display(key: str, A: Arrangement | None) -> str:
    if A is not None and key in A.point_lines and key.isdigit():
        return "P" + key
    return key


def _resolve(name: str, A: Arrangement) -> str:
    if name in A.point_lines or name in A.names:
        return name
    if name.startswith("P") and name[1:] in A.point_lines:
        return name[1:]
    raise PlanError(f"unknown element {name!r}")


_STEP_RE = {
    "basis": re.compile(r"^basis\s+(\S+)\s+(\[.*\])$"),
    "join": re.compile(r"^join\s+(\S+)\s*=\s*(\S+)\s*\+\s*(\S+)$"),
    "meet": re.compile(r"^meet\s+(\S+)\s*=\s*(\S+)\s*\^\s*(\S+)$"),
    "free": re.compile(r"^free\s+(\S+)\s+(\d+)(?:\s*=\s*(\[.*\]))?$"),
}


def parse_plan(text: str, A: Arrangement) -> ConstructionPlan:
    steps = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op = line.split()[0]
        rx = _STEP_RE.get(op)
        m = rx.match(line) if rx else None
        if not m:
            raise PlanError(f"line {n}: cannot parse plan step {line!r}")
        g = m.groups()
        if op == "basis":
            steps.append(Step("basis", _resolve(g[0], A), coords=g[1].replace(" ", "")))
        elif op in ("join", "meet"):
            steps.append(Step(op, _resolve(g[0], A), (_resolve(g[1], A), _resolve(g[2], A))))
        else:
            steps.append(Step("free", _resolve(g[0], A), nparams=int(g[1]),
                              coords=g[2].replace(" ", "") if g[2] else None))
    plan = ConstructionPlan(tuple(steps))
    validate_plan(plan, A)
    return plan


# -- incidence helpers ----------------------------------------------------------

def is_point(A: Arrangement, key: str) -> bool:
    return key in A.point_lines


def incident(A: Arrangement, key: str) -> set[str]:
    """Elements incident to ``key``: lines through a point or points on a line."""
    if is_point(A, key):
        return {A.names[i] for i in A.point_lines[key]}
    return set(A.lines[A.names.index(key)])


def elements(A: Arrangement) -> list[str]:
    return list(A.points) + list(A.names)


def general_position(A: Arrangement, keys: list[str]) -> bool:
    """Four points or four lines, no three of which can become dependent."""
    if len(keys) != 4 or len(set(keys)) != 4:
        return False
    kinds = {is_point(A, k) for k in keys}
    if len(kinds) != 1:
        return False
    for trio in combinations(keys, 3):
        if not separated(A, trio):
            return False
    return True


def separated(A: Arrangement, trio) -> bool:
    """Are three elements independent in every realization of A?

    Three lines with no common point in A can never become concurrent.  Three
    points with no common line can still end up collinear, unless two of them
    share a line of A: then the third would gain an extra incidence.
    """
    x, y, z = trio
    if incident(A, x) & incident(A, y) & incident(A, z):
        return False
    if not is_point(A, x):
        return True
    return any(incident(A, p) & incident(A, q) for p, q in combinations(trio, 2))


def frame(A: Arrangement, keys: list[str]) -> bool:
    """A projective basis, or a partial one for arrangements too small to hold four."""
    if len(keys) == 4:
        return general_position(A, keys)
    if not 1 <= len(keys) <= 3 or len(set(keys)) != len(keys):
        return False
    if len({is_point(A, k) for k in keys}) != 1:
        return False
    return len(keys) < 3 or separated(A, keys)


def validate_plan(plan: ConstructionPlan, A: Arrangement) -> None:
    placed: set[str] = set()
    basis = [s.target for s in plan.steps if s.op == "basis"]
    if basis and not frame(A, basis):
        raise PlanError("basis elements are not in general position")
    for s in plan.steps:
        if s.target in placed:
            raise PlanError(f"element {s.target} placed twice")
        inc = incident(A, s.target)
        if s.op in ("join", "meet"):
            want_point = s.op == "meet"
            if is_point(A, s.target) != want_point:
                raise PlanError(f"{s.op} target {s.target} has the wrong kind")
            for a in s.args:
                if a not in placed:
                    raise PlanError(f"step for {s.target} references unplaced element {a}")
                if a not in inc:
                    raise PlanError(f"{a} is not incident to {s.target}")
            if s.args[0] == s.args[1]:
                raise PlanError(f"step for {s.target} uses the same element twice")
        elif s.op == "free":
            if s.nparams not in (0, 1, 2):
                raise PlanError("free steps introduce 0, 1 or 2 parameters")
            if s.coords is None and len(inc & placed) != 2 - s.nparams:
                raise PlanError(
                    f"free {s.target} {s.nparams}: element meets {len(inc & placed)} placed elements")
        placed.add(s.target)
    missing = set(elements(A)) - placed
    if missing:
        raise PlanError(f"plan does not place {sorted(missing)}")


# -- automatic plans --------------------------------------------------------------

def _greedy(A: Arrangement, basis: list[str], keys: list[str],
            inc: list[list[int]]) -> tuple[list[Step], int]:
    """Place determined elements first; otherwise the free element with most placed
    neighbours, then largest cascade of newly determined elements, then lowest index."""
    n = len(keys)
    index = {k: i for i, k in enumerate(keys)}
    steps = [Step("basis", k, coords=c) for k, c in zip(basis, BASIS_COORDS)]
    placed = [False] * n
    count = [0] * n
    params = 0

    def place(i):
        placed[i] = True
        for j in inc[i]:
            count[j] += 1

    for k in basis:
        place(index[k])
    while True:
        todo = [i for i in range(n) if not placed[i]]
        if not todo:
            break
        ready = [i for i in todo if count[i] >= 2]
        if ready:
            x = ready[0]
            nb = [j for j in sorted(inc[x]) if placed[j]][:2]
            op = "meet" if is_point(A, keys[x]) else "join"
            steps.append(Step(op, keys[x], (keys[nb[0]], keys[nb[1]])))
        else:
            kmax = max(count[i] for i in todo)
            best = None
            for i in todo:
                if count[i] == kmax:
                    score = (-_cascade(i, placed, count, inc), i)
                    if best is None or score < best:
                        best = score
            x = best[1]
            steps.append(Step("free", keys[x], nparams=2 - kmax))
            params += 2 - kmax
        place(x)
    return steps, params


def _cascade(x: int, placed: list[bool], count: list[int], inc: list[list[int]]) -> int:
    """How many elements become determined, transitively, once x is placed as well."""
    extra: dict[int, int] = {}
    done = {x}
    queue = [x]
    total = 0
    while queue:
        y = queue.pop()
        for z in inc[y]:
            if placed[z] or z in done:
                continue
            c = extra.get(z, 0) + 1
            extra[z] = c
            if count[z] + c >= 2:
                done.add(z)
                queue.append(z)
                total += 1
    return total


def candidate_bases(A: Arrangement) -> list[list[str]]:
    pts = list(A.points)
    lines = list(A.names)
    for size in (4, 3, 2, 1):
        out = [list(c) for group in (pts, lines) for c in combinations(group, size)
               if frame(A, list(c))]
        if out:
            return out
    return []


def plan_candidates(A: Arrangement, limit: int | None = None) -> list[ConstructionPlan]:
    """Greedy plans for every basis, best (fewest parameters) first."""
    keys = elements(A)
    index = {k: i for i, k in enumerate(keys)}
    inc = [sorted(index[y] for y in incident(A, k)) for k in keys]
    scored = []
    for i, basis in enumerate(candidate_bases(A)):
        steps, params = _greedy(A, basis, keys, inc)
        scored.append((params, i, steps))
    scored.sort(key=lambda t: (t[0], t[1]))
    out = []
    for params, _, steps in scored[: limit or len(scored)]:
        out.append(ConstructionPlan(tuple(steps), note=f"{params} parameters"))
    return out


def auto_plan(A: Arrangement) -> ConstructionPlan:
    """Greedy plan over all bases, minimising the number of parameters."""
    cands = plan_candidates(A, limit=1)
    if not cands:
        raise PlanError("arrangement has no elements to place")
    return cands[0]


_SHIPPED = {"(10_3)_5.ANO": "ano_plan.txt"}


def shipped_plan(name: str) -> ConstructionPlan:
    """A hand-written plan shipped with the package, keyed by arrangement name."""
    from importlib.resources import files

    from ..catalog import lookup, normalize_name
    key = normalize_name(name)
    if key not in _SHIPPED:
        raise KeyError(f"no shipped plan for {name!r}")
    text = files("olext.data").joinpath(_SHIPPED[key]).read_text()
    return parse_plan(text, lookup(key))
