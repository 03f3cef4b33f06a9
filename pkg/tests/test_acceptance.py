"""Exit criteria of the build, one test per criterion.

Each test prints a PASS/FAIL line; the same lines are repeated in the
terminal summary under "acceptance criteria".
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import ACCEPTANCE
from kslab import external
from kslab.catalog import format_direction_set, gen_coplanar_fan, gen_peres_33, gen_single_triad, gen_two_triads
from kslab.cli import main
from kslab.contextual import (
    build_loophole_model, check_triad_local, context_free_model, lift_loophole_model, requires_multiple_contexts,
)
from kslab.ks import Status, build_structure, export_cnf, import_cnf_result, search_colorings
from kslab.quantum import (
    random_orthonormal_triple, random_unit_vectors, squared_spectrum, sum_rule_residual, twin_agreement_probability,
)
from kslab.spacetime import (
    Event, MeasurementWindow, Region, Scenario, Worldline, causally_independent, h_prime_region_check,
    intersection_apex_time, monotonicity_probe, symmetric_twin_scenario,
)
from oracles import brute_force_count, grid_apex_max

pytestmark = pytest.mark.acceptance

TOL = 1e-12


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        ACCEPTANCE.append((name, False))
        print(f"FAIL  {name}")
        raise
    ACCEPTANCE.append((name, True))
    print(f"PASS  {name}")


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def test_ks_contradiction(capsys, tmp_path):
    with criterion("KS contradiction: peres-33 UNSAT, count 0, external solver agrees, < 10 s"):
        start = time.perf_counter()
        path = tmp_path / "peres.txt"
        path.write_text(format_direction_set(gen_peres_33()))
        cnf = tmp_path / "peres.cnf"
        code, rep = cli(capsys, "verify", path, "--count", "--cnf-out", cnf)
        assert code == 0
        assert rep["result"]["status"] == "UNSAT" and rep["result"]["count"] == 0
        assert external.solve_dimacs(cnf.read_text()) is None
        peres = gen_peres_33()
        check = import_cnf_result(peres, None, search_colorings(peres))
        assert check.agree and check.external_status is Status.UNSAT
        assert time.perf_counter() - start < 10


def test_triad_baseline():
    with criterion("Triad baseline: 3 and 9 colorings; solver = 2^n brute force on 50 random Peres subsets"):
        assert search_colorings(gen_single_triad(), True).count == 3
        assert search_colorings(gen_two_triads(), True).count == 9
        peres = gen_peres_33()
        rnd = random.Random(2006)
        for _ in range(50):
            k = rnd.randint(1, 12)
            sub = peres.subset(sorted(rnd.sample(range(33), k)))
            st = build_structure(sub)
            assert search_colorings(st, True).count == brute_force_count(k, st.pairs, st.triads)


def test_operator_realization():
    with criterion("Operator realization: sum-rule residual and S_n^2 spectrum within 1e-12 on 100 frames"):
        rng = np.random.default_rng(11)
        worst_sum = worst_spec = 0.0
        for _ in range(100):
            frame = random_orthonormal_triple(rng)
            worst_sum = max(worst_sum, sum_rule_residual(*frame))
            for n in frame:
                worst_spec = max(worst_spec, float(np.max(np.abs(squared_spectrum(n) - [0, 1, 1]))))
        print(f"      max sum-rule residual {worst_sum:.3e}, max spectrum error {worst_spec:.3e}")
        assert worst_sum < TOL and worst_spec < TOL


def test_twin_singlet():
    with criterion("TWIN: singlet agreement probability 1 within 1e-12 on 100 random directions"):
        rng = np.random.default_rng(12)
        worst = max(abs(twin_agreement_probability(n) - 1) for n in random_unit_vectors(rng, 100))
        print(f"      max deviation {worst:.3e}")
        assert worst < TOL


def test_loophole_demonstration():
    with criterion("Loophole: triad-local model passes every triad on peres-33 while search is UNSAT"):
        st = build_structure(gen_peres_33())
        model = build_loophole_model(st)
        report = search_colorings(st)
        assert len(model.zero_of) == len(st.triads) == 16
        assert check_triad_local(st, model) == []
        assert report.status is Status.UNSAT


def test_context_necessity():
    with criterion("Context necessity: true for peres-33 and the triad, false for fans k=2,5,10"):
        assert requires_multiple_contexts(gen_peres_33())
        assert requires_multiple_contexts(gen_single_triad())
        for k in (2, 5, 10):
            assert not requires_multiple_contexts(gen_coplanar_fan(k))


def _static(separation):
    src = Event(F(-100), (F(separation) / 2, 0, 0))
    windows = (MeasurementWindow("A", 0, 0, 0, 1), MeasurementWindow("B", 0, 0, 0, 1))
    return Scenario(F(1), src, Worldline(Event(0), (0, 0, 0)),
                    Worldline(Event(0, (F(separation), 0, 0)), (0, 0, 0)), windows)


def test_causality():
    with criterion("Causality: separation 10 independent, 1/2 and lightlike 1 connected (c=1, dt=1)"):
        for sep, expected in ((10, True), (F(1, 2), False), (1, False)):
            sc = _static(sep)
            assert causally_independent(sc, *sc.schedule).independent is expected


def test_cone_growth():
    with criterion("Cone growth: apex t(1-v/c) matches grid maximization on 20 (v,t); increasing v<c; constant v=c"):
        rnd = random.Random(4)
        src = Event(0)
        steps = 100
        for _ in range(20):
            v = F(rnd.randint(0, 19), 20)
            t = F(rnd.randint(1, 80), 4)
            sc = Scenario(F(1), src, Worldline(src, (v, 0, 0)), Worldline(src, (-v, 0, 0)))
            exact = intersection_apex_time(sc, t)
            assert exact == t * (1 - v)
            best = grid_apex_max(v, F(1), t, steps)
            assert best <= exact <= best + t / steps
            assert monotonicity_probe(sc, [1, 2, 3, t + 3]).kind == "increasing"
        light = Scenario(F(1), src, Worldline(src, (1, 0, 0)), Worldline(src, (-1, 0, 0)))
        assert monotonicity_probe(light, [1, 2, 3]).kind == "constant"


def test_full_argument(capsys, tmp_path):
    with criterion("Full argument: CONTRADICTION / TWIN-VIOLATION / CONSISTENT via CLI; signals inside H'"):
        peres, triad = gen_peres_33(), gen_single_triad()
        (tmp_path / "peres.txt").write_text(format_direction_set(peres))
        (tmp_path / "triad.txt").write_text(format_direction_set(triad))
        scen = symmetric_twin_scenario(33, signals=[Event(50), Event(60, (1, 2, 0))])
        (tmp_path / "ps.json").write_text(scen.to_json())
        (tmp_path / "ts.json").write_text(symmetric_twin_scenario(3).to_json())

        rnd = random.Random(5)
        for k in range(20):
            cols = {f"h{j}": [rnd.randint(0, 1) for _ in range(33)] for j in range(rnd.randint(1, 4))}
            path = tmp_path / f"cf{k}.json"
            path.write_text(context_free_model(peres, cols).to_json())
            _, rep = cli(capsys, "contextual", tmp_path / "peres.txt", path, tmp_path / "ps.json")
            assert rep["result"]["verdict"] == "CONTRADICTION"

        (tmp_path / "loop.json").write_text(lift_loophole_model(peres, build_loophole_model(peres)).to_json())
        _, rep = cli(capsys, "contextual", tmp_path / "peres.txt", tmp_path / "loop.json", tmp_path / "ps.json")
        assert rep["result"]["verdict"] == "TWIN-VIOLATION" and rep["result"]["twin_witnesses"]
        assert all(s["region"] == "inside" for s in rep["result"]["h_prime"]["signals"])

        (tmp_path / "tw.json").write_text(context_free_model(triad, search_colorings(triad).witness).to_json())
        code, rep = cli(capsys, "contextual", tmp_path / "triad.txt", tmp_path / "tw.json", tmp_path / "ts.json")
        assert rep["result"]["verdict"] == "CONSISTENT" and code == 0

        for e in scen.signals:
            assert h_prime_region_check(scen, e) is Region.INSIDE
