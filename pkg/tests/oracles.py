"""Independent reference computations the tests compare against.

None of these reuse the search, elimination or cone code under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy


def to_sympy(ray):
    return [sympy.Rational(c.a.numerator, c.a.denominator)
            + sympy.Rational(c.b.numerator, c.b.denominator) * sympy.sqrt(2) for c in ray]


def sympy_dot_zero(u, v) -> bool:
    return sympy.expand(sum(a * b for a, b in zip(u, v))) == 0


def scan_structure(rays):
    """O(n^3) orthogonality scan in sympy's exact arithmetic."""
    vs = [to_sympy(r) for r in rays]
    n = len(vs)
    orth = {(i, j) for i, j in combinations(range(n), 2) if sympy_dot_zero(vs[i], vs[j])}
    triads = {t for t in combinations(range(n), 3)
              if (t[0], t[1]) in orth and (t[0], t[2]) in orth and (t[1], t[2]) in orth}
    return orth, triads


def sympy_rank(rays) -> int:
    """Largest k with a nonzero k x k minor."""
    rows = [to_sympy(r) for r in rays]
    if not rows:
        return 0
    for k in (3, 2, 1):
        for rs in combinations(range(len(rows)), k):
            for cs in combinations(range(3), k):
                m = sympy.Matrix([[rows[i][j] for j in cs] for i in rs])
                if sympy.simplify(m.det()) != 0:
                    return k
    return 0


def brute_force_count(n, pairs, triads) -> int:
    """2^n enumeration of {0,1} assignments under the triad and pair rules."""
    count = 0
    for vals in product((0, 1), repeat=n):
        if any(vals[i] == 0 and vals[j] == 0 for i, j in pairs):
            continue
        if any(sum(1 for i in t if vals[i] == 0) != 1 for t in triads):
            continue
        count += 1
    return count


def grid_apex_max(v: Fraction, c: Fraction, t: Fraction, steps: int = 200) -> Fraction:
    """Latest grid time tau with some grid position y in both past cones.

    A sits at +v t and B at -v t on the x axis; cone membership is checked
    as c^2 (t - tau)^2 >= (y - x)^2 over a rational (tau, y) grid.
    """
    h = t / steps
    best = None
    ys = [-v * t + k * (2 * v * t) / steps for k in range(steps + 1)] if v else [Fraction(0)]
    for i in range(steps + 1):
        tau = i * h
        for y in ys:
            if all(c * c * (t - tau) ** 2 >= (y - x) ** 2 for x in (v * t, -v * t)):
                best = tau
                break
    return best
