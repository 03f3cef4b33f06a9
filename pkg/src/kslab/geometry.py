"""Exact arithmetic in Q(sqrt 2) and projective rays in three dimensions.

Every orthogonality decision in the package goes through this module, so
nothing downstream ever compares floats against a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import DomainError, ParseError

Scalar = Union[int, Fraction, "QuadExt"]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, slots=True)
class QuadExt:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        # normalise ints/strings so equality and hashing are structural
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, x: Scalar) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to QuadExt")

    @classmethod
    def parse(cls, text: str) -> QuadExt:
        """Parse the ``a,b`` component syntax used by direction-set files."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(_parse_rational(parts[0]), _parse_rational(parts[1]))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Scalar) -> QuadExt:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b)

    def __sub__(self, other: Scalar) -> QuadExt:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Scalar) -> QuadExt:
        return -self + other

    def __mul__(self, other: Scalar) -> QuadExt:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> QuadExt:
        if self.is_zero():
            raise DomainError("zero has no multiplicative inverse")
        n = self.norm()
        return QuadExt(self.a / n, -self.b / n)

    def __truediv__(self, other: Scalar) -> QuadExt:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> QuadExt:
        return QuadExt.of(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT2

    def __str__(self) -> str:
        return f"{_fmt(self.a)},{_fmt(self.b)}"

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadExt({_fmt(self.a)})"
        return f"QuadExt({_fmt(self.a)} + {_fmt(self.b)}*sqrt2)"


def _coerce(x) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadExt(Fraction(x))
    return NotImplemented


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    if not _is_int_literal(num) or (sep and not (den.isdigit() and int(den) > 0)):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int_literal(s: str) -> bool:
    return s[1:].isdigit() if s[:1] == "-" else s.isdigit()


def parse_rational(text: str | int) -> Fraction:
    """Parse ``p`` or ``p/q`` (optionally negative) into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    return _parse_rational(text)


def qx_add(u: QuadExt, v: QuadExt) -> QuadExt:
    return u + v


def qx_mul(u: QuadExt, v: QuadExt) -> QuadExt:
    return u * v


def qx_neg(u: QuadExt) -> QuadExt:
    return -u


def qx_inv(u: QuadExt) -> QuadExt:
    return u.inverse()


ZERO = QuadExt()
ONE = QuadExt(Fraction(1))
ROOT2 = QuadExt(Fraction(0), Fraction(1))

Vector = tuple[QuadExt, QuadExt, QuadExt]


def _as_vector(v: Ray | Sequence[Scalar]) -> Vector:
    comps = v.components if isinstance(v, Ray) else tuple(v)
    if len(comps) != 3:
        raise DomainError(f"expected 3 components, got {len(comps)}")
    return tuple(QuadExt.of(c) for c in comps)  # type: ignore[return-value]


def _canonical_components(v: Sequence[Scalar]) -> Vector:
    comps = _as_vector(v)
    coeffs = [q for c in comps for q in (c.a, c.b)]
    if all(q == 0 for q in coeffs):
        raise DomainError("the zero vector does not define a direction")
    scale = reduce(math.lcm, (q.denominator for q in coeffs), 1)
    ints = [int(q * scale) for q in coeffs]
    content = reduce(math.gcd, ints, 0)
    ints = [i // content for i in ints]
    for k in range(3):
        a, b = ints[2 * k], ints[2 * k + 1]
        if a or b:
            if (a if a else b) < 0:
                ints = [-i for i in ints]
            break
    return tuple(QuadExt(Fraction(ints[2 * k]), Fraction(ints[2 * k + 1])) for k in range(3))  # type: ignore[return-value]


@dataclass(frozen=True, slots=True)
class Ray:
    """A direction in R^3 held in canonical projective form.

    Build rays with :func:`canonicalize` or :func:`ray`; the constructor
    rejects non-canonical component triples.
    """

    components: Vector

    def __post_init__(self):
        if _canonical_components(self.components) != tuple(self.components):
            raise DomainError(f"components {self.components!r} are not canonical; use canonicalize()")

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k: int) -> QuadExt:
        return self.components[k]

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.components)

    def to_floats(self) -> tuple[float, float, float]:
        return tuple(float(c) for c in self.components)  # type: ignore[return-value]

    def __repr__(self) -> str:
        return "Ray(" + ", ".join(_short(c) for c in self.components) + ")"


def _short(c: QuadExt) -> str:
    if c.b == 0:
        return _fmt(c.a)
    root = "√2" if c.b == 1 else ("-√2" if c.b == -1 else f"{_fmt(c.b)}√2")
    if c.a == 0:
        return root
    return f"{_fmt(c.a)}{'+' if not root.startswith('-') else ''}{root}"


def canonicalize(v: Ray | Sequence[Scalar]) -> Ray:
    """Return the canonical ray through ``v``.

    Denominators are cleared, the integer content of all six coefficients
    is divided out, and the sign is fixed so the first nonzero component
    has a positive leading coefficient.
    """
    if isinstance(v, Ray):
        return v
    return Ray(_canonical_components(v))


def ray(*components: Scalar) -> Ray:
    return canonicalize(components)


def dot(u: Ray | Sequence[Scalar], v: Ray | Sequence[Scalar]) -> QuadExt:
    x, y = _as_vector(u), _as_vector(v)
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def is_orthogonal(u: Ray | Sequence[Scalar], v: Ray | Sequence[Scalar]) -> bool:
    return dot(u, v).is_zero()


def cross(u: Ray | Sequence[Scalar], v: Ray | Sequence[Scalar]) -> Vector:
    x, y = _as_vector(u), _as_vector(v)
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


def same_direction(u: Ray | Sequence[Scalar], v: Ray | Sequence[Scalar]) -> bool:
    """Projective equality over the reals: the cross product vanishes.

    Stronger than comparing canonical forms, which only identify rational
    multiples; ``(sqrt2, sqrt2, 2)`` and ``(1, 1, sqrt2)`` differ as canonical
    forms but are the same direction.
    """
    return all(c.is_zero() for c in cross(u, v))


def perpendicular_axis(r: Ray) -> Ray:
    """Some ray orthogonal to ``r``; deterministic."""
    for e in ((1, 0, 0), (0, 1, 0)):
        c = cross(r, e)
        if any(not x.is_zero() for x in c):
            return canonicalize(c)
    raise AssertionError("unreachable: a nonzero ray is parallel to at most one basis vector")


def rank(rays: Iterable[Ray | Sequence[Scalar]]) -> int:
    """Rank over Q(sqrt 2) by fraction-free (Bareiss) elimination."""
    rows = [list(_as_vector(r)) for r in rays]
    if not rows:
        return 0
    m, ncols = len(rows), 3
    r = 0
    prev = ONE
    for col in range(ncols):
        pivot = next((i for i in range(r, m) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m):
            f = rows[i][col]
            rows[i] = [(p * rows[i][k] - f * rows[r][k]) / prev for k in range(ncols)]
        prev = p
        r += 1
        if r == m:
            break
    return r


def parse_ray(text: str) -> Ray:
    """Parse three whitespace-separated ``a,b`` components into a ray."""
    fields = text.split()
    if len(fields) != 3:
        raise ParseError(f"expected 3 components, found {len(fields)}")
    comps = []
    for f in fields:
        try:
            comps.append(QuadExt.parse(f))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    try:
        return canonicalize(comps)
    except DomainError as exc:
        raise ParseError(str(exc)) from None
