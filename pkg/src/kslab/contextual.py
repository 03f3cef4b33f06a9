"""Context-dependent value assignments and the twin argument against them.

A contextual model gives the squared spin along ray ``n`` as a function of
a hidden state ``h`` and an apparatus context ``r``. The context is the
beam axis of a Stern-Gerlach style apparatus, so it must be orthogonal to
the measured direction.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError
from .geometry import Ray, dot, parse_ray, perpendicular_axis, rank, same_direction
from .ks import DirectionSet, OrthoStructure, Violation, build_structure, validate_coloring
from .spacetime import Scenario, causally_independent


@dataclass(frozen=True)
class Context:
    axis: Ray

    def to_text(self) -> str:
        return self.axis.to_text()


@dataclass(frozen=True, order=True)
class HiddenState:
    token: str


def valid_context(n: Ray, r: Ray | Context) -> bool:
    axis = r.axis if isinstance(r, Context) else r
    return dot(n, axis).is_zero()


def requires_multiple_contexts(dset: DirectionSet | Iterable[Ray]) -> bool:
    """True when no single axis is orthogonal to every ray of the set."""
    return rank(list(dset)) >= 3


@dataclass(frozen=True)
class ContextualModel:
    """Lookup table ``(state, ray index, context index) -> {0, 1}``."""

    rays: tuple[Ray, ...]
    states: tuple[HiddenState, ...]
    contexts: tuple[tuple[Context, ...], ...]
    table: Mapping[tuple[str, int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(self.rays))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "contexts", tuple(tuple(cs) for cs in self.contexts))
        object.__setattr__(self, "table", dict(self.table))
        if len(self.contexts) != len(self.rays):
            raise DomainError("need one context list per ray")
        if not self.states:
            raise DomainError("hidden-state universe is empty")
        for i, (n, cs) in enumerate(zip(self.rays, self.contexts)):
            if not cs:
                raise DomainError(f"ray {i} has no context")
            for k, ctx in enumerate(cs):
                if not valid_context(n, ctx):
                    raise DomainError(f"context {k} of ray {i} is not orthogonal to the ray")
        for h in self.states:
            for i, cs in enumerate(self.contexts):
                for k in range(len(cs)):
                    v = self.table.get((h.token, i, k))
                    if v not in (0, 1):
                        raise DomainError(f"table has no 0/1 entry for ({h.token}, {i}, {k})")

    def value(self, h: HiddenState | str, i: int, k: int) -> int:
        token = h.token if isinstance(h, HiddenState) else h
        return self.table[(token, i, k)]

    def context_index(self, i: int, ctx: Context | int) -> int:
        if isinstance(ctx, int):
            if not 0 <= ctx < len(self.contexts[i]):
                raise DomainError(f"ray {i} has no context {ctx}")
            return ctx
        if not valid_context(self.rays[i], ctx):
            raise DomainError(f"context axis {ctx.axis!r} is not orthogonal to ray {i}")
        for k, c in enumerate(self.contexts[i]):
            if same_direction(c.axis, ctx.axis):
                return k
        raise DomainError(f"context axis {ctx.axis!r} is not declared for ray {i}")

    def to_dict(self) -> dict:
        rows = [[t, i, k, v] for (t, i, k), v in sorted(self.table.items())]
        return {
            "hidden_states": [h.token for h in self.states],
            "contexts": [[c.to_text() for c in cs] for cs in self.contexts],
            "table": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict, dset: DirectionSet) -> ContextualModel:
        try:
            states = tuple(HiddenState(str(t)) for t in d["hidden_states"])
            contexts = []
            for i, cs in enumerate(d["contexts"]):
                row = []
                for k, text in enumerate(cs):
                    try:
                        row.append(Context(parse_ray(text)))
                    except ParseError as exc:
                        raise DomainError(f"context {k} of ray {i}: {exc}") from None
                contexts.append(tuple(row))
            table = {}
            for row in d["table"]:
                t, i, k, v = row
                key = (str(t), int(i), int(k))
                if key in table:
                    raise DomainError(f"duplicate table row {key}")
                table[key] = int(v)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed contextual model: {exc!r}") from None
        known = {h.token for h in states}
        for t, i, k in table:
            if t not in known or not 0 <= i < len(contexts) or not 0 <= k < len(contexts[i]):
                raise DomainError(f"table row ({t}, {i}, {k}) is outside the declared domain")
        return cls(dset.rays, states, tuple(contexts), table)

    @classmethod
    def from_json(cls, text: str, dset: DirectionSet) -> ContextualModel:
        return cls.from_dict(json.loads(text), dset)


@dataclass(frozen=True)
class TriadLocalAssignment:
    """For each triad, which of its members takes the value 0."""

    zero_of: Mapping[tuple[int, int, int], int]

    def __post_init__(self):
        for t, i in self.zero_of.items():
            if i not in t:
                raise DomainError(f"{i} is not a member of triad {t}")

    def values_in(self, triad: tuple[int, int, int]) -> dict[int, int]:
        z = self.zero_of[triad]
        return {i: 0 if i == z else 1 for i in triad}


def build_loophole_model(dset: DirectionSet | OrthoStructure, choose=min) -> TriadLocalAssignment:
    """Pick a 0-valued ray independently in every triad (lowest index by default)."""
    st = dset if isinstance(dset, OrthoStructure) else build_structure(dset)
    return TriadLocalAssignment({t: choose(t) for t in st.triads})


def check_triad_local(structure: OrthoStructure, assignment: TriadLocalAssignment) -> list[tuple[int, int, int]]:
    """Triads whose own measurement yields anything but exactly one 0 and two 1s."""
    bad = []
    for t in structure.triads:
        if t not in assignment.zero_of:
            bad.append(t)
            continue
        vals = assignment.values_in(t)
        if sorted(vals.values()) != [0, 1, 1]:
            bad.append(t)
    return bad


def lift_loophole_model(
    dset: DirectionSet, assignment: TriadLocalAssignment, state: str = "h0"
) -> ContextualModel:
    """Express a triad-local assignment as a contextual table.

    Measuring ray ``i`` as part of triad ``t`` uses the lowest-index other
    member of ``t`` as beam axis. Two triads through ``i`` never share that
    axis, so every triad gets its own context. Rays on no triad get one
    context perpendicular to them and the value 1.
    """
    st = build_structure(dset)
    contexts: list[list[Context]] = [[] for _ in dset.rays]
    table: dict[tuple[str, int, int], int] = {}
    for t in st.triads:
        vals = assignment.values_in(t)
        for i in t:
            axis = dset[min(k for k in t if k != i)]
            table[(state, i, len(contexts[i]))] = vals[i]
            contexts[i].append(Context(axis))
    for i, cs in enumerate(contexts):
        if not cs:
            cs.append(Context(perpendicular_axis(dset[i])))
            table[(state, i, 0)] = 1
    return ContextualModel(dset.rays, (HiddenState(state),), tuple(tuple(c) for c in contexts), table)


def default_contexts(dset: DirectionSet, per_ray: int = 2) -> list[list[Context]]:
    """Up to ``per_ray`` orthogonal partners from the set, else a computed axis."""
    st = build_structure(dset)
    out = []
    for i, r in enumerate(dset):
        cs = [Context(dset[j]) for j in st.neighbors[i][:per_ray]]
        if not cs:
            cs = [Context(perpendicular_axis(r))]
        out.append(cs)
    return out


def context_free_model(
    dset: DirectionSet,
    colorings: Mapping[str, Sequence[int]] | Sequence[int],
    contexts: Sequence[Sequence[Context]] | None = None,
) -> ContextualModel:
    """Table whose value ignores the context: F(h, n, r) = coloring_h[n]."""
    if not isinstance(colorings, Mapping):
        colorings = {"h0": colorings}
    ctx = [list(cs) for cs in (contexts if contexts is not None else default_contexts(dset))]
    table = {}
    for token, col in colorings.items():
        if len(col) != len(dset):
            raise DomainError(f"coloring for {token} has wrong length")
        for i, cs in enumerate(ctx):
            for k in range(len(cs)):
                table[(token, i, k)] = int(col[i])
    states = tuple(HiddenState(t) for t in colorings)
    return ContextualModel(dset.rays, states, tuple(tuple(c) for c in ctx), table)


@dataclass(frozen=True)
class TwinResult:
    equal: bool
    value_a: int
    value_b: int

    def __bool__(self) -> bool:
        return self.equal


def twin_consistency(
    model: ContextualModel, h: HiddenState | str, n: int, rA: Context | int, rB: Context | int
) -> TwinResult:
    """Compare A's and B's outcomes on direction ``n`` under their own contexts."""
    ka, kb = model.context_index(n, rA), model.context_index(n, rB)
    a, b = model.value(h, n, ka), model.value(h, n, kb)
    return TwinResult(a == b, a, b)


def collapse(model: ContextualModel) -> dict[str, tuple[int, ...]]:
    """Context-free coloring per hidden state; only meaningful once TWIN holds."""
    return {
        h.token: tuple(model.value(h, i, 0) for i in range(len(model.rays))) for h in model.states
    }


class Verdict(str, enum.Enum):
    CONTRADICTION = "CONTRADICTION"
    TWIN_VIOLATION = "TWIN-VIOLATION"
    CAUSAL_DEPENDENCE_ALLOWED = "CAUSAL-DEPENDENCE-ALLOWED"
    CONSISTENT = "CONSISTENT"


@dataclass
class ArgumentResult:
    verdict: Verdict
    causal_witnesses: list[dict] = field(default_factory=list)
    twin_witnesses: list[dict] = field(default_factory=list)
    violations: dict[str, list[Violation]] = field(default_factory=dict)
    colorings: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def to_dict(self, limit: int | None = 50) -> dict:
        def cut(xs):
            return xs if limit is None else xs[:limit]

        return {
            "verdict": self.verdict.value,
            "causal_witnesses": cut(self.causal_witnesses),
            "n_causal_witnesses": len(self.causal_witnesses),
            "twin_witnesses": cut(self.twin_witnesses),
            "n_twin_witnesses": len(self.twin_witnesses),
            "violations": {h: cut([v.to_dict() for v in vs]) for h, vs in sorted(self.violations.items())},
            "colorings": {h: list(c) for h, c in sorted(self.colorings.items())},
        }


def run_conway_kochen_argument(dset: DirectionSet, model: ContextualModel, scenario: Scenario) -> ArgumentResult:
    """Run the causal, twin and collapse steps in order; stop at the first failure."""
    if len(model.rays) != len(dset) or any(not same_direction(a, b) for a, b in zip(model.rays, dset)):
        raise DomainError("model rays do not match the direction set")
    for w in scenario.schedule:
        if not 0 <= w.direction < len(dset):
            raise DomainError(f"schedule references unknown direction {w.direction}")
        model.context_index(w.direction, w.context)
    for obs in ("A", "B"):
        covered = {w.direction for w in scenario.windows(obs)}
        missing = sorted(set(range(len(dset))) - covered)
        if missing:
            raise DomainError(f"observer {obs} has no scheduled measurement of directions {missing}")

    causal = []
    for wa in scenario.windows("A"):
        for wb in scenario.windows("B"):
            ind = causally_independent(scenario, wa, wb)
            if not ind:
                causal.append({"window_a": wa.to_dict(), "window_b": wb.to_dict(), **ind.to_dict()})
    if causal:
        return ArgumentResult(Verdict.CAUSAL_DEPENDENCE_ALLOWED, causal_witnesses=causal)

    twin = []
    for h in model.states:
        for i, cs in enumerate(model.contexts):
            for ka in range(len(cs)):
                for kb in range(ka + 1, len(cs)):
                    res = twin_consistency(model, h, i, ka, kb)
                    if not res:
                        twin.append({
                            "state": h.token, "direction": i, "context_a": ka, "context_b": kb,
                            "value_a": res.value_a, "value_b": res.value_b,
                        })
    if twin:
        return ArgumentResult(Verdict.TWIN_VIOLATION, twin_witnesses=twin)

    st = build_structure(dset)
    colorings = collapse(model)
    violations = {}
    for token, col in colorings.items():
        vs = validate_coloring(st, col)
        if vs:
            violations[token] = vs
    verdict = Verdict.CONTRADICTION if violations else Verdict.CONSISTENT
    return ArgumentResult(verdict, violations=violations, colorings=colorings)
