"""Tabulate the latest common past event of two separating twins.

    python scripts/cone_growth.py --speeds 0,1/4,1/2,3/4,1 --times 1,2,4,8
"""

import argparse

from kslab.geometry import parse_rational
from kslab.spacetime import Event, Scenario, Worldline, monotonicity_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--speeds", default="0,1/4,1/2,3/4,1", help="twin speeds in units of c")
    ap.add_argument("--times", default="1,2,4,8")
    args = ap.parse_args()
    times = [parse_rational(t) for t in args.times.split(",")]
    src = Event(0)
    print("v/c      " + "  ".join(f"t={t!s:>6}" for t in times) + "  trend")
    for s in args.speeds.split(","):
        v = parse_rational(s)
        sc = Scenario(1, src, Worldline(src, (v, 0, 0)), Worldline(src, (-v, 0, 0)))
        probe = monotonicity_probe(sc, times)
        print(f"{s:8s} " + "  ".join(f"{a!s:>8}" for a in probe.apexes) + f"  {probe.kind}")


if __name__ == "__main__":
    main()
