"""Orthogonality structure, {0,1} value assignments and their search.

A coloring gives every ray the value of the squared spin along it. It is
valid when each orthogonal triad inside the set has exactly one ray valued
0 and no orthogonal pair has both rays valued 0. The pair rule is enforced
even when the third ray completing the pair is absent from the set, which
is the usual marking rule for Kochen-Specker sets.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, IntegrityError, ParseError
from .geometry import Ray, is_orthogonal, same_direction


@dataclass(frozen=True)
class DirectionSet:
    rays: tuple[Ray, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(self.rays))
        for i, j in combinations(range(len(self.rays)), 2):
            if same_direction(self.rays[i], self.rays[j]):
                raise DomainError(f"rays {i} and {j} are the same direction")

    def __len__(self) -> int:
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def __getitem__(self, i: int) -> Ray:
        return self.rays[i]

    def index(self, r: Ray) -> int:
        for i, s in enumerate(self.rays):
            if same_direction(r, s):
                return i
        raise KeyError(r)

    def subset(self, indices: Iterable[int], name: str | None = None) -> DirectionSet:
        return DirectionSet(tuple(self.rays[i] for i in indices), self.name if name is None else name)

    def without(self, i: int) -> DirectionSet:
        return self.subset((k for k in range(len(self)) if k != i), f"{self.name}-minus-{i}")


@dataclass(frozen=True)
class OrthoStructure:
    size: int
    pairs: tuple[tuple[int, int], ...]
    triads: tuple[tuple[int, int, int], ...]

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.size)]
        for i, j in self.pairs:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def triads_of(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        inc: list[list[tuple[int, int, int]]] = [[] for _ in range(self.size)]
        for t in self.triads:
            for i in t:
                inc[i].append(t)
        return tuple(tuple(x) for x in inc)


def build_structure(dset: DirectionSet) -> OrthoStructure:
    n = len(dset)
    pairs = [(i, j) for i, j in combinations(range(n), 2) if is_orthogonal(dset[i], dset[j])]
    pairset = set(pairs)
    triads = []
    for i, j in pairs:
        for k in range(j + 1, n):
            if (i, k) in pairset and (j, k) in pairset:
                triads.append((i, j, k))
    triads.sort()
    return OrthoStructure(n, tuple(pairs), tuple(triads))


@dataclass(frozen=True)
class Violation:
    kind: str  # "triad-no-zero", "triad-multiple-zeros" or "pair-both-zero"
    indices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices)}


def _as_values(structure: OrthoStructure, coloring: Mapping[int, int] | Sequence[int]) -> list[int]:
    if isinstance(coloring, Mapping):
        missing = [i for i in range(structure.size) if i not in coloring]
        if missing:
            raise DomainError(f"coloring is partial; missing rays {missing}")
        values = [coloring[i] for i in range(structure.size)]
    else:
        values = list(coloring)
        if len(values) != structure.size:
            raise DomainError(f"coloring has {len(values)} values for {structure.size} rays")
    if any(v not in (0, 1) for v in values):
        raise DomainError("coloring values must be 0 or 1")
    return values


def validate_coloring(structure: OrthoStructure, coloring: Mapping[int, int] | Sequence[int]) -> list[Violation]:
    """Return every violated constraint; an empty list means the coloring is valid."""
    values = _as_values(structure, coloring)
    out = []
    for t in structure.triads:
        zeros = sum(1 for i in t if values[i] == 0)
        if zeros == 0:
            out.append(Violation("triad-no-zero", t))
        elif zeros > 1:
            out.append(Violation("triad-multiple-zeros", t))
    for p in structure.pairs:
        if values[p[0]] == 0 and values[p[1]] == 0:
            out.append(Violation("pair-both-zero", p))
    return out


class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass
class SearchReport:
    status: Status
    count: int | None
    witness: tuple[int, ...] | None
    nodes_explored: int
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, include_elapsed: bool = True) -> dict:
        d = {
            "status": self.status.value,
            "count": self.count,
            "witness": list(self.witness) if self.witness is not None else None,
            "nodes": self.nodes_explored,
        }
        if include_elapsed:
            d["elapsed_seconds"] = round(self.elapsed, 6)
        return d

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)


class _Search:
    def __init__(self, st: OrthoStructure, count_all: bool):
        self.st = st
        self.count_all = count_all
        self.val: list[int | None] = [None] * st.size
        self.trail: list[int] = []
        # for each ray, the two other members of each triad through it
        self.others = [
            tuple(tuple(k for k in t if k != i) for t in st.triads_of[i]) for i in range(st.size)
        ]
        self.order = sorted(range(st.size), key=lambda i: (-len(st.triads_of[i]), i))
        self.nodes = 0
        self.count = 0
        self.witness: tuple[int, ...] | None = None

    def _assign(self, i: int, v: int, queue: list[int]) -> None:
        self.val[i] = v
        self.trail.append(i)
        queue.append(i)

    def _propagate(self, queue: list[int]) -> bool:
        val = self.val
        while queue:
            i = queue.pop()
            if val[i] == 0:
                for j in self.st.neighbors[i]:
                    if val[j] is None:
                        self._assign(j, 1, queue)
                    elif val[j] == 0:
                        return False
            else:
                for a, b in self.others[i]:
                    va, vb = val[a], val[b]
                    if va == 1 and vb == 1:
                        return False
                    if va == 1 and vb is None:
                        self._assign(b, 0, queue)
                    elif vb == 1 and va is None:
                        self._assign(a, 0, queue)
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.val[self.trail.pop()] = None

    def run(self) -> bool:
        """Depth-first search; returns True when the caller should stop."""
        var = next((i for i in self.order if self.val[i] is None), None)
        if var is None:
            self.count += 1
            if self.witness is None:
                self.witness = tuple(self.val)  # type: ignore[arg-type]
            return not self.count_all
        self.nodes += 1
        for v in (0, 1):
            mark = len(self.trail)
            queue: list[int] = []
            self._assign(var, v, queue)
            if self._propagate(queue) and self.run():
                return True
            self._undo(mark)
        return False


def search_colorings(dset: DirectionSet | OrthoStructure, count_all: bool = False) -> SearchReport:
    """Complete backtracking search for valid colorings.

    Branches on the unassigned ray lying on the most triads (lowest index on
    ties), trying 0 before 1. A 0 forces 1 on every orthogonal partner; two
    1s on a triad force the third ray to 0.
    """
    st = dset if isinstance(dset, OrthoStructure) else build_structure(dset)
    start = time.perf_counter()
    s = _Search(st, count_all)
    s.run()
    elapsed = time.perf_counter() - start
    if s.count == 0:
        return SearchReport(Status.UNSAT, 0, None, s.nodes, elapsed)
    if s.witness is not None and validate_coloring(st, s.witness):
        raise IntegrityError("search produced an invalid witness")
    return SearchReport(Status.SAT, s.count if count_all else None, s.witness, s.nodes, elapsed)


def cnf_clauses(structure: OrthoStructure) -> list[tuple[int, ...]]:
    """Clauses over variables 1..n where variable i+1 means ray i is valued 1."""
    clauses: list[tuple[int, ...]] = [(i + 1, j + 1) for i, j in structure.pairs]
    clauses += [(-(i + 1), -(j + 1), -(k + 1)) for i, j, k in structure.triads]
    return clauses


def export_cnf(dset: DirectionSet | OrthoStructure, name: str | None = None) -> str:
    st = dset if isinstance(dset, OrthoStructure) else build_structure(dset)
    if name is None and isinstance(dset, DirectionSet):
        name = dset.name
    clauses = cnf_clauses(st)
    lines = []
    if name:
        lines.append(f"c direction set {name}")
    lines.append("c variable i true <=> ray i-1 valued 1")
    lines.append(f"p cnf {st.size} {len(clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[int, list[tuple[int, ...]]]:
    nvars = nclauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed problem line", lineno)
            nvars, nclauses = int(parts[2]), int(parts[3])
            continue
        if nvars is None:
            raise ParseError("clause before problem line", lineno)
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > nvars:
                raise ParseError(f"literal {lit} exceeds {nvars} variables", lineno)
            else:
                current.append(lit)
    if nvars is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("unterminated clause")
    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def parse_solver_output(text: str) -> list[int] | None:
    """Read SAT-competition style output (``s``/``v`` lines). None means UNSAT."""
    status = None
    lits: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            lits += [int(t) for t in line[2:].split() if t != "0"]
    if status == "UNSATISFIABLE":
        return None
    if status != "SATISFIABLE":
        raise ParseError(f"unrecognised solver status {status!r}")
    return lits


@dataclass(frozen=True)
class CrossCheck:
    agree: bool
    external_status: Status
    coloring: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "agree": self.agree,
            "external_status": self.external_status.value,
            "coloring": list(self.coloring) if self.coloring is not None else None,
        }


def import_cnf_result(
    dset: DirectionSet | OrthoStructure,
    result: Sequence[int] | str | None,
    report: SearchReport | None = None,
) -> CrossCheck:
    """Map an external solver's answer back onto the direction set.

    ``result`` is a model as a list of DIMACS literals, ``None`` or the
    string ``"UNSAT"`` for unsatisfiable, or raw solver output text. A model
    that is not a valid coloring, or a status that contradicts ``report``,
    raises IntegrityError.
    """
    st = dset if isinstance(dset, OrthoStructure) else build_structure(dset)
    if isinstance(result, str):
        result = None if result.strip().upper() == "UNSAT" else parse_solver_output(result)
    if result is None:
        if report is not None and report.status is not Status.UNSAT:
            raise IntegrityError("external solver reports UNSAT but search found a coloring")
        return CrossCheck(True, Status.UNSAT)
    truth = {abs(l): l > 0 for l in result}
    coloring = tuple(1 if truth.get(i + 1, False) else 0 for i in range(st.size))
    violations = validate_coloring(st, coloring)
    if violations:
        raise IntegrityError(
            f"external model decodes to an invalid coloring: {[v.to_dict() for v in violations[:5]]}"
        )
    if report is not None and report.status is not Status.SAT:
        raise IntegrityError("external model is a valid coloring but search reported UNSAT")
    return CrossCheck(True, Status.SAT, coloring)
