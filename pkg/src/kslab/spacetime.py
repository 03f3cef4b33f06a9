"""Exact light-cone bookkeeping for twin measurement scenarios.

Everything is rational; cone membership compares squared intervals so no
square root is ever taken. Lightlike separation counts as causal contact.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .errors import DomainError, UnsupportedConfiguration
from .geometry import parse_rational

Vec3 = tuple[Fraction, Fraction, Fraction]
Observer = Literal["A", "B"]


def _vec(xs: Sequence) -> Vec3:
    if len(xs) != 3:
        raise DomainError(f"expected 3 spatial coordinates, got {len(xs)}")
    return tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in xs)  # type: ignore[return-value]


def _norm2(v: Sequence[Fraction]) -> Fraction:
    return sum((c * c for c in v), Fraction(0))


def _sub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _q(x) -> Fraction:
    return parse_rational(x) if isinstance(x, str) else Fraction(x)


@dataclass(frozen=True)
class Event:
    t: Fraction
    x: Vec3 = (Fraction(0), Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "t", _q(self.t))
        object.__setattr__(self, "x", _vec(self.x))

    def to_dict(self) -> dict:
        return {"t": str(self.t), "x": [str(c) for c in self.x]}

    @classmethod
    def from_dict(cls, d: dict) -> Event:
        return cls(_q(d["t"]), _vec(d.get("x", (0, 0, 0))))


@dataclass(frozen=True)
class Worldline:
    origin: Event
    velocity: Vec3

    def __post_init__(self):
        object.__setattr__(self, "velocity", _vec(self.velocity))

    def position(self, t: Fraction) -> Vec3:
        dt = _q(t) - self.origin.t
        return tuple(o + v * dt for o, v in zip(self.origin.x, self.velocity))  # type: ignore[return-value]

    def event(self, t: Fraction) -> Event:
        return Event(_q(t), self.position(t))

    def speed2(self) -> Fraction:
        return _norm2(self.velocity)


@dataclass(frozen=True)
class MeasurementWindow:
    """One measurement: observer, direction index, context index, [start, start+duration]."""

    observer: Observer
    direction: int
    context: int
    start: Fraction
    duration: Fraction

    def __post_init__(self):
        if self.observer not in ("A", "B"):
            raise DomainError(f"observer must be 'A' or 'B', got {self.observer!r}")
        object.__setattr__(self, "start", _q(self.start))
        object.__setattr__(self, "duration", _q(self.duration))
        if self.duration <= 0:
            raise DomainError("measurement duration must be positive")

    @property
    def end(self) -> Fraction:
        return self.start + self.duration

    def to_dict(self) -> dict:
        return {
            "observer": self.observer,
            "direction": self.direction,
            "context": self.context,
            "start": str(self.start),
            "duration": str(self.duration),
        }


def in_past_cone(e: Event, apex: Event, c: Fraction) -> bool:
    """True when a signal no faster than ``c`` can get from ``e`` to ``apex``."""
    dt = apex.t - e.t
    if dt < 0:
        return False
    return c * c * dt * dt >= _norm2(_sub(apex.x, e.x))


@dataclass(frozen=True)
class Scenario:
    c: Fraction
    source: Event
    worldline_a: Worldline
    worldline_b: Worldline
    schedule: tuple[MeasurementWindow, ...] = ()
    signals: tuple[Event, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c", _q(self.c))
        object.__setattr__(self, "schedule", tuple(self.schedule))
        object.__setattr__(self, "signals", tuple(self.signals))
        if self.c <= 0:
            raise DomainError("signal speed c must be positive")
        for label, w in (("A", self.worldline_a), ("B", self.worldline_b)):
            if w.speed2() > self.c * self.c:
                raise DomainError(f"worldline {label} is faster than c")
            if not in_past_cone(self.source, w.origin, self.c):
                raise DomainError(f"worldline {label} does not start in the causal future of the source")

    def worldline(self, observer: Observer) -> Worldline:
        return self.worldline_a if observer == "A" else self.worldline_b

    def is_lightlike(self, observer: Observer) -> bool:
        return self.worldline(observer).speed2() == self.c * self.c

    def separation2(self, t: Fraction) -> Fraction:
        """Squared distance between the observers at time ``t``."""
        return _norm2(_sub(self.worldline_a.position(t), self.worldline_b.position(t)))

    def latest_time(self) -> Fraction:
        if not self.schedule:
            raise DomainError("scenario has an empty measurement schedule")
        return max(w.end for w in self.schedule)

    def windows(self, observer: Observer) -> list[MeasurementWindow]:
        return [w for w in self.schedule if w.observer == observer]

    def to_dict(self) -> dict:
        d = {
            "c": str(self.c),
            "source": self.source.to_dict(),
            "velocity_a": [str(v) for v in self.worldline_a.velocity],
            "velocity_b": [str(v) for v in self.worldline_b.velocity],
            "schedule": [w.to_dict() for w in self.schedule],
            "signals": [e.to_dict() for e in self.signals],
        }
        if self.worldline_a.origin != self.source:
            d["origin_a"] = self.worldline_a.origin.to_dict()
        if self.worldline_b.origin != self.source:
            d["origin_b"] = self.worldline_b.origin.to_dict()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Scenario:
        try:
            source = Event.from_dict(d["source"])
            origin_a = Event.from_dict(d["origin_a"]) if "origin_a" in d else source
            origin_b = Event.from_dict(d["origin_b"]) if "origin_b" in d else source
            schedule = tuple(
                MeasurementWindow(
                    row["observer"], int(row["direction"]), int(row.get("context", 0)),
                    _q(row["start"]), _q(row["duration"]),
                )
                for row in d.get("schedule", ())
            )
            return cls(
                _q(d["c"]),
                source,
                Worldline(origin_a, _vec(d["velocity_a"])),
                Worldline(origin_b, _vec(d["velocity_b"])),
                schedule,
                tuple(Event.from_dict(e) for e in d.get("signals", ())),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed scenario: {exc!r}") from None

    @classmethod
    def from_json(cls, text: str) -> Scenario:
        return cls.from_dict(json.loads(text))


def _exact_sqrt(q: Fraction) -> Fraction | None:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def twin_speed(scenario: Scenario) -> Fraction:
    """Common outward speed of symmetric twins leaving the source."""
    a, b = scenario.worldline_a, scenario.worldline_b
    if a.origin != scenario.source or b.origin != scenario.source:
        raise UnsupportedConfiguration("closed form needs both worldlines to start at the source")
    if any(va != -vb for va, vb in zip(a.velocity, b.velocity)):
        raise UnsupportedConfiguration("closed form needs opposite velocities (B = -A)")
    v = _exact_sqrt(a.speed2())
    if v is None:
        raise UnsupportedConfiguration("twin speed is not rational")
    return v


def intersection_apex_time(scenario: Scenario, t: Fraction) -> Fraction:
    """Latest time of an event lying in the past cones of both A(t) and B(t).

    For twins leaving the source at speed v the apex sits on the midline at
    ``t0 + (t - t0)(1 - v/c)``; at v = c it stays at the source time.
    """
    t = _q(t)
    v = twin_speed(scenario)
    t0 = scenario.source.t
    if t < t0:
        raise DomainError("time precedes the source event")
    return t0 + (t - t0) * (1 - v / scenario.c)


@dataclass(frozen=True)
class Independence:
    independent: bool
    witness: tuple[Event, Event] | None = None  # (earlier, later) causally connected

    def __bool__(self) -> bool:
        return self.independent

    def to_dict(self) -> dict:
        return {
            "independent": self.independent,
            "witness": [e.to_dict() for e in self.witness] if self.witness else None,
        }


def _contact(scenario: Scenario, choice: Event, other: Worldline, w: MeasurementWindow):
    c = scenario.c
    # along a worldline no faster than c, reaching the window end is the
    # easiest forward contact and the window start the easiest backward one
    end = other.event(w.end)
    if in_past_cone(choice, end, c):
        return (choice, end)
    begin = other.event(w.start)
    if in_past_cone(begin, choice, c):
        return (begin, choice)
    return None


def causally_independent(scenario: Scenario, wA: MeasurementWindow, wB: MeasurementWindow) -> Independence:
    """Spacelike separation of each party's choice event from the other party's whole window."""
    if wA.observer != "A" or wB.observer != "B":
        raise DomainError("expected a window of observer A and a window of observer B")
    choice_a = scenario.worldline_a.event(wA.start)
    choice_b = scenario.worldline_b.event(wB.start)
    hit = _contact(scenario, choice_a, scenario.worldline_b, wB) or _contact(
        scenario, choice_b, scenario.worldline_a, wA
    )
    return Independence(hit is None, hit)


class Region(str, enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


def h_prime_region_at(scenario: Scenario, e: Event, T: Fraction) -> Region:
    """Membership of ``e`` in both past cones with apexes A(T) and B(T)."""
    c = scenario.c
    ok = in_past_cone(e, scenario.worldline_a.event(T), c) and in_past_cone(e, scenario.worldline_b.event(T), c)
    return Region.INSIDE if ok else Region.OUTSIDE


def h_prime_region_check(scenario: Scenario, e: Event) -> Region:
    """Membership of ``e`` in the cone intersection at the latest scheduled window end."""
    return h_prime_region_at(scenario, e, scenario.latest_time())


@dataclass(frozen=True)
class Probe:
    kind: str  # "increasing", "constant" or "violation"
    apexes: tuple[Fraction, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"kind": self.kind, "apexes": [str(a) for a in self.apexes]}


def monotonicity_probe(scenario: Scenario, times: Sequence[Fraction]) -> Probe:
    times = [_q(t) for t in times]
    if not times:
        raise DomainError("no probe times given")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise DomainError("probe times must be strictly increasing")
    v = twin_speed(scenario)
    apexes = tuple(intersection_apex_time(scenario, t) for t in times)
    steps = list(zip(apexes, apexes[1:]))
    if v < scenario.c:
        kind = "increasing" if all(b > a for a, b in steps) else "violation"
    else:
        kind = "constant" if all(b == a for a, b in steps) else "violation"
    return Probe(kind, apexes)


def symmetric_twin_scenario(
    n_directions: int,
    v: Fraction = Fraction(1, 2),
    c: Fraction = Fraction(1),
    start: Fraction = Fraction(100),
    spacing: Fraction = Fraction(1),
    duration: Fraction = Fraction(1, 2),
    contexts_a: Sequence[int] | None = None,
    contexts_b: Sequence[int] | None = None,
    signals: Sequence[Event] = (),
) -> Scenario:
    """Twins flying apart along x from a source at the origin.

    Both observers measure direction ``i`` in a window starting at
    ``start + i*spacing``.
    """
    v, c = _q(v), _q(c)
    source = Event(Fraction(0))
    ca = contexts_a or [0] * n_directions
    cb = contexts_b or [0] * n_directions
    schedule = []
    for i in range(n_directions):
        s = _q(start) + i * _q(spacing)
        schedule.append(MeasurementWindow("A", i, ca[i], s, _q(duration)))
        schedule.append(MeasurementWindow("B", i, cb[i], s, _q(duration)))
    return Scenario(
        c,
        source,
        Worldline(source, (v, Fraction(0), Fraction(0))),
        Worldline(source, (-v, Fraction(0), Fraction(0))),
        tuple(schedule),
        tuple(signals),
    )
