"""Command-line entry point: ``kslab {verify,contextual,spacetime,quantum,catalog}``.

Every command prints one JSON report on stdout. Exit status: 0 when the
run completed with the expected verdict class, 1 for a violation or
contradiction finding (or a mismatch with ``--expect``), 2 for bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import catalog, external
from .contextual import ContextualModel, Verdict, run_conway_kochen_argument
from .errors import DomainError, IntegrityError, ParseError, UnsupportedConfiguration
from .geometry import parse_rational
from .ks import DirectionSet, Status, build_structure, export_cnf, import_cnf_result, search_colorings
from .quantum import sweep
from .spacetime import Event, Scenario, h_prime_region_check, monotonicity_probe

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FINDING, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _load_set(spec: str, inputs: dict) -> DirectionSet:
    if spec.startswith("catalog:"):
        name = spec[len("catalog:"):]
        try:
            dset = catalog.generate(name)
        except (KeyError, DomainError):
            raise InputError(f"unknown catalog set {name!r}") from None
        inputs[spec] = _digest(catalog.format_direction_set(dset).encode())
        return dset
    path = Path(spec)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    inputs[spec] = _digest(data)
    try:
        return catalog.parse_direction_set(data.decode("utf-8"), path.stem)
    except ParseError as exc:
        raise InputError(f"{spec}: {exc}") from None
    except UnicodeDecodeError:
        raise InputError(f"{spec}: not UTF-8 text") from None


def _read_json(spec: str, inputs: dict) -> dict:
    try:
        data = Path(spec).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    inputs[spec] = _digest(data)
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_scenario(spec: str, inputs: dict) -> Scenario:
    try:
        return Scenario.from_dict(_read_json(spec, inputs))
    except DomainError as exc:
        raise InputError(f"{spec}: {exc}") from None


def cmd_verify(args) -> tuple[dict, int]:
    inputs: dict = {}
    dset = _load_set(args.set_file, inputs)
    st = build_structure(dset)
    report = search_colorings(st, count_all=args.count)
    result = report.to_dict(include_elapsed=not args.no_timing)
    if not args.witness:
        result.pop("witness")
    result.update(name=dset.name, rays=len(dset), pairs=len(st.pairs), triads=len(st.triads))
    cnf = export_cnf(st, dset.name)
    if args.cnf_out:
        Path(args.cnf_out).write_text(cnf, encoding="ascii")
        result["cnf_out"] = args.cnf_out
    code = EXIT_OK
    if args.cross_check:
        model = external.solve_dimacs(cnf)
        try:
            result["cross_check"] = import_cnf_result(st, model, report).to_dict()
        except IntegrityError as exc:
            result["cross_check"] = {"agree": False, "error": str(exc)}
            code = EXIT_FINDING
    if args.expect and args.expect != report.status.value:
        code = EXIT_FINDING
    return {"inputs": inputs, "result": result}, code


def cmd_contextual(args) -> tuple[dict, int]:
    inputs: dict = {}
    dset = _load_set(args.set_file, inputs)
    try:
        model = ContextualModel.from_dict(_read_json(args.model_file, inputs), dset)
    except DomainError as exc:
        raise InputError(f"{args.model_file}: {exc}") from None
    scenario = _load_scenario(args.scenario_file, inputs)
    try:
        res = run_conway_kochen_argument(dset, model, scenario)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    result = res.to_dict()
    result["h_prime"] = {
        "latest_time": str(scenario.latest_time()),
        "signals": [
            {**e.to_dict(), "region": h_prime_region_check(scenario, e).value} for e in scenario.signals
        ],
    }
    if args.expect:
        code = EXIT_OK if res.verdict.value == args.expect else EXIT_FINDING
    else:
        code = EXIT_OK if res.verdict is Verdict.CONSISTENT else EXIT_FINDING
    return {"inputs": inputs, "result": result}, code


def _parse_event(text: str, scenario: Scenario) -> Event:
    if text == "source":
        return scenario.source
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError(f"event must be 'source' or 't,x,y,z', got {text!r}")
    try:
        t, *x = (parse_rational(p) for p in parts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return Event(t, tuple(x))


def cmd_spacetime(args) -> tuple[dict, int]:
    inputs: dict = {}
    scenario = _load_scenario(args.scenario_file, inputs)
    result: dict = {"c": str(scenario.c)}
    code = EXIT_OK
    if args.probe:
        try:
            times = [parse_rational(t) for t in args.probe.split(",")]
        except ValueError as exc:
            raise InputError(f"--probe: {exc}") from None
        try:
            probe = monotonicity_probe(scenario, times)
        except UnsupportedConfiguration as exc:
            raise InputError(f"--probe needs symmetric twins: {exc}") from None
        except DomainError as exc:
            raise InputError(f"--probe: {exc}") from None
        result["probe"] = {"times": [str(t) for t in times], **probe.to_dict()}
        if probe.kind == "violation":
            code = EXIT_FINDING
    if scenario.schedule:
        result["latest_time"] = str(scenario.latest_time())
        events = [("signal", e) for e in scenario.signals]
        if args.hprime:
            events.insert(0, ("query", _parse_event(args.hprime, scenario)))
        result["h_prime"] = [
            {"role": role, **e.to_dict(), "region": h_prime_region_check(scenario, e).value} for role, e in events
        ]
    elif args.hprime:
        raise InputError("--hprime needs a nonempty schedule")
    return {"inputs": inputs, "result": result}, code


def cmd_quantum(args) -> tuple[dict, int]:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    result = sweep(args.trials, args.seed)
    return {"inputs": {}, "result": result}, EXIT_OK if result["passed"] else EXIT_FINDING


def cmd_catalog(args) -> tuple[dict, int]:
    if args.action == "list":
        entries = [
            {"name": e.name, "expected_status": e.expected_status, "description": e.description}
            for e in catalog.CATALOG.values()
        ]
        return {"inputs": {}, "result": {"entries": entries}}, EXIT_OK
    if not args.name or not args.path:
        raise InputError("usage: catalog emit NAME PATH")
    try:
        dset = catalog.generate(args.name)
    except (KeyError, DomainError):
        raise InputError(f"unknown catalog set {args.name!r}") from None
    text = catalog.format_direction_set(dset)
    Path(args.path).write_text(text, encoding="utf-8")
    return {"inputs": {}, "result": {"name": dset.name, "rays": len(dset), "path": args.path,
                                     "digest": _digest(text.encode())}}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kslab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="search for value assignments on a direction set")
    v.add_argument("set_file", help="direction-set file, or catalog:NAME")
    v.add_argument("--count", action="store_true", help="count every valid coloring")
    v.add_argument("--witness", action="store_true", help="include a witness coloring")
    v.add_argument("--cnf-out", metavar="PATH", help="write the DIMACS encoding")
    v.add_argument("--cross-check", action="store_true", help="re-solve the CNF with an external SAT solver")
    v.add_argument("--expect", choices=[s.value for s in Status])
    v.add_argument("--no-timing", action="store_true", help="omit elapsed time for byte-stable output")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("contextual", help="run the twin argument against a contextual model")
    c.add_argument("set_file")
    c.add_argument("model_file")
    c.add_argument("scenario_file")
    c.add_argument("--expect", choices=[x.value for x in Verdict])
    c.set_defaults(func=cmd_contextual)

    s = sub.add_parser("spacetime", help="light-cone checks on a twin scenario")
    s.add_argument("scenario_file")
    s.add_argument("--probe", metavar="T1,T2,...")
    s.add_argument("--hprime", metavar="EVENT", help="'source' or 't,x,y,z'")
    s.set_defaults(func=cmd_spacetime)

    q = sub.add_parser("quantum", help="randomized spin-1 operator checks")
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_quantum)

    k = sub.add_parser("catalog", help="list or emit built-in direction sets")
    k.add_argument("action", choices=["list", "emit"])
    k.add_argument("name", nargs="?")
    k.add_argument("path", nargs="?")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        body, code = args.func(args)
    except InputError as exc:
        print(f"kslab {args.command}: {exc}", file=sys.stderr)
        body, code = {"inputs": {}, "result": {"error": str(exc)}}, EXIT_INPUT
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, **body, "exit_code": code}
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
