"""Built-in direction sets and the plain-text direction-set format.

File format: UTF-8, ``#`` starts a comment, one ray per line written as
three whitespace-separated components. Each component is ``a,b`` for
``a + b*sqrt(2)`` with ``a`` and ``b`` given as ``p`` or ``p/q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterator

from .errors import DomainError, ParseError
from .geometry import ROOT2, QuadExt, Ray, canonicalize, parse_ray, same_direction
from .ks import DirectionSet


def _dedup(rays) -> list[Ray]:
    out: list[Ray] = []
    for r in rays:
        r = canonicalize(r)
        if not any(same_direction(r, s) for s in out):
            out.append(r)
    return out


def gen_single_triad() -> DirectionSet:
    return DirectionSet((canonicalize((1, 0, 0)), canonicalize((0, 1, 0)), canonicalize((0, 0, 1))), "single-triad")


def gen_two_triads() -> DirectionSet:
    """The basis plus a rational triad with no component zero; no cross pairs."""
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 2), (2, 1, -2), (2, -2, 1)]
    return DirectionSet(tuple(canonicalize(r) for r in rays), "two-triads")


def _fan_slopes() -> Iterator[QuadExt | None]:
    yield QuadExt(0)
    yield None  # the y axis
    m = 1
    while True:
        for s in (QuadExt(m), QuadExt(-m), QuadExt(0, m), QuadExt(0, -m)):
            yield s
        m += 1


def gen_coplanar_fan(k: int) -> DirectionSet:
    """``k`` distinct rays in the plane z = 0."""
    if k < 2:
        raise DomainError("a coplanar fan needs at least 2 rays")
    rays = []
    for slope in _fan_slopes():
        if len(rays) == k:
            break
        rays.append(canonicalize((0, 1, 0) if slope is None else (QuadExt(1), slope, QuadExt(0))))
    return DirectionSet(tuple(rays), f"coplanar-fan-{k}")


def gen_peres_33() -> DirectionSet:
    """Peres' 33 rays with components in {0, +-1, +-sqrt2}.

    Built as the images under coordinate permutations (and sign changes)
    of (0,0,1), (0,1,1), (0,1,sqrt2) and (1,1,sqrt2).
    """
    r2 = ROOT2
    one = QuadExt(1)
    zero = QuadExt(0)
    seeds = [(zero, zero, one), (zero, one, one), (zero, one, r2), (one, one, r2)]
    rays = []
    for seed in seeds:
        for perm in sorted(set(permutations(range(3)))):
            base = tuple(seed[p] for p in perm)
            for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)):
                v = tuple(QuadExt(Fraction(s)) * c for s, c in zip(signs, base))
                if any(not c.is_zero() for c in v):
                    rays.append(v)
    out = _dedup(rays)
    if len(out) != 33:
        raise AssertionError(f"Peres construction produced {len(out)} rays")
    return DirectionSet(tuple(out), "peres-33")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    generator: Callable[[], DirectionSet]
    expected_status: str  # "SAT", "UNSAT" or "unknown"
    description: str = ""


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("single-triad", gen_single_triad, "SAT", "the standard basis"),
        CatalogEntry("two-triads", gen_two_triads, "SAT", "two triads with no cross-orthogonal pairs"),
        CatalogEntry("coplanar-fan", lambda: gen_coplanar_fan(5), "SAT", "5 rays in the z = 0 plane"),
        CatalogEntry("peres-33", gen_peres_33, "UNSAT", "Peres' 33-ray set over {0, +-1, +-sqrt2}"),
    )
}


def generate(name: str) -> DirectionSet:
    """Look up a catalog set; ``coplanar-fan-K`` selects the fan size."""
    if name in CATALOG:
        return CATALOG[name].generator()
    prefix = "coplanar-fan-"
    if name.startswith(prefix) and name[len(prefix):].isdigit():
        return gen_coplanar_fan(int(name[len(prefix):]))
    raise KeyError(name)


def format_direction_set(dset: DirectionSet) -> str:
    lines = [f"# {dset.name}" if dset.name else "# direction set", f"# {len(dset)} rays"]
    lines += [r.to_text() for r in dset]
    return "\n".join(lines) + "\n"


def parse_direction_set(text: str, name: str = "") -> DirectionSet:
    rays: list[Ray] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        column = len(body) - len(body.lstrip()) + 1
        try:
            r = parse_ray(body)
        except ParseError as exc:
            col = _bad_column(body) or column
            raise ParseError(exc.args[0], lineno, col) from None
        for k, s in enumerate(rays):
            if same_direction(r, s):
                raise ParseError(f"duplicate of ray {k}", lineno, column)
        rays.append(r)
    return DirectionSet(tuple(rays), name)


def _bad_column(body: str) -> int | None:
    """1-based column of the first component that does not parse."""
    pos = 0
    for field in body.split():
        pos = body.index(field, pos)
        try:
            QuadExt.parse(field)
        except ValueError:
            return pos + 1
        pos += len(field)
    return None


def load_direction_set(path) -> DirectionSet:
    p = Path(path)
    return parse_direction_set(p.read_text(encoding="utf-8"), p.stem)
