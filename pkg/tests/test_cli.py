import json
import os
from pathlib import Path

import pytest

from kslab.catalog import format_direction_set, gen_peres_33, gen_single_triad
from kslab.cli import main
from kslab.contextual import build_loophole_model, context_free_model, lift_loophole_model
from kslab.ks import Status, search_colorings
from kslab.spacetime import Event, symmetric_twin_scenario

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    report = json.loads(out.out)
    assert report["exit_code"] == code and report["schema_version"] == 1
    return code, report, out


def check_golden(name, report):
    path = GOLDEN / name
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if os.environ.get("KSLAB_UPDATE_GOLDEN"):
        path.write_text(text)
    assert text == path.read_text()


@pytest.fixture
def files(tmp_path):
    peres, triad = gen_peres_33(), gen_single_triad()
    (tmp_path / "peres.txt").write_text(format_direction_set(peres))
    (tmp_path / "triad.txt").write_text(format_direction_set(triad))
    cols = {"h0": [1] * 33, "h1": [i % 2 for i in range(33)]}
    (tmp_path / "cf.json").write_text(context_free_model(peres, cols).to_json())
    (tmp_path / "loop.json").write_text(lift_loophole_model(peres, build_loophole_model(peres)).to_json())
    (tmp_path / "tw.json").write_text(context_free_model(triad, search_colorings(triad).witness).to_json())
    (tmp_path / "ps.json").write_text(symmetric_twin_scenario(33, signals=[Event(50)]).to_json())
    (tmp_path / "ts.json").write_text(symmetric_twin_scenario(3).to_json())
    (tmp_path / "light.json").write_text(symmetric_twin_scenario(3, v=1).to_json())
    return tmp_path


def test_verify_triad_count(capsys, files):
    code, rep, _ = run(capsys, "verify", files / "triad.txt", "--count", "--witness")
    assert code == 0
    assert rep["result"]["count"] == 3 and rep["result"]["witness"] == [0, 1, 1]


def test_verify_peres(capsys, files, tmp_path):
    cnf = tmp_path / "p.cnf"
    code, rep, _ = run(capsys, "verify", files / "peres.txt", "--cnf-out", cnf, "--cross-check")
    assert code == 0
    assert rep["result"]["status"] == "UNSAT"
    assert rep["result"]["cross_check"]["agree"]
    assert "p cnf 33 88" in cnf.read_text().splitlines()


def test_verify_expect_mismatch(capsys, files):
    assert run(capsys, "verify", files / "peres.txt", "--expect", "SAT")[0] == 1
    assert run(capsys, "verify", files / "peres.txt", "--expect", "UNSAT")[0] == 0


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1,0 0,0 0,0\n0,0 1,q 0,0\n")
    code, rep, out = run(capsys, "verify", bad)
    assert code == 2
    assert "line 2, column 5" in out.err


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.txt")[0] == 2


def test_verify_golden(capsys):
    _, rep, _ = run(capsys, "verify", "catalog:peres-33", "--count", "--no-timing")
    check_golden("verify_peres33.json", rep)


def test_emit_then_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "p33.txt"
    code, rep, _ = run(capsys, "catalog", "emit", "peres-33", path)
    assert code == 0
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 33
    _, from_file, _ = run(capsys, "verify", path, "--count", "--witness", "--no-timing")
    _, in_memory, _ = run(capsys, "verify", "catalog:peres-33", "--count", "--witness", "--no-timing")
    for key in ("status", "count", "nodes", "pairs", "triads", "witness"):
        assert from_file["result"][key] == in_memory["result"][key]


def test_catalog_list_and_unknown(capsys, tmp_path):
    _, rep, _ = run(capsys, "catalog", "list")
    names = {e["name"] for e in rep["result"]["entries"]}
    assert {"single-triad", "coplanar-fan", "peres-33"} <= names
    check_golden("catalog_list.json", rep)
    assert run(capsys, "catalog", "emit", "unknown", tmp_path / "x.txt")[0] == 2


@pytest.mark.parametrize(
    "model,scenario,setfile,verdict,code",
    [
        ("cf.json", "ps.json", "peres.txt", "CONTRADICTION", 1),
        ("loop.json", "ps.json", "peres.txt", "TWIN-VIOLATION", 1),
        ("tw.json", "ts.json", "triad.txt", "CONSISTENT", 0),
    ],
)
def test_contextual(capsys, files, model, scenario, setfile, verdict, code):
    got, rep, _ = run(capsys, "contextual", files / setfile, files / model, files / scenario)
    assert rep["result"]["verdict"] == verdict and got == code
    assert run(capsys, "contextual", files / setfile, files / model, files / scenario, "--expect", verdict)[0] == 0


def test_contextual_schedule_mismatch(capsys, files):
    assert run(capsys, "contextual", files / "peres.txt", files / "cf.json", files / "ts.json")[0] == 2


def test_contextual_model_for_wrong_set(capsys, files):
    assert run(capsys, "contextual", files / "triad.txt", files / "cf.json", files / "ts.json")[0] == 2


def test_spacetime_probe(capsys, files):
    code, rep, _ = run(capsys, "spacetime", files / "ts.json", "--probe", "1,2,3", "--hprime", "source")
    assert code == 0
    assert rep["result"]["probe"]["apexes"] == ["1/2", "1", "3/2"]
    assert rep["result"]["probe"]["kind"] == "increasing"
    assert rep["result"]["h_prime"][0] == {"role": "query", "t": "0", "x": ["0", "0", "0"], "region": "inside"}
    _, light, _ = run(capsys, "spacetime", files / "light.json", "--probe", "1,2,3")
    assert light["result"]["probe"]["kind"] == "constant"


def test_spacetime_hprime_event(capsys, files):
    _, rep, _ = run(capsys, "spacetime", files / "ps.json", "--hprime", "1000,0,0,0")
    assert rep["result"]["h_prime"][0]["region"] == "outside"
    assert rep["result"]["h_prime"][1]["region"] == "inside"


def test_spacetime_unsupported_probe(capsys, tmp_path):
    d = json.loads(symmetric_twin_scenario(1).to_json())
    d["velocity_b"] = ["-1/4", "0", "0"]
    p = tmp_path / "lop.json"
    p.write_text(json.dumps(d))
    code, _, out = run(capsys, "spacetime", p, "--probe", "1,2")
    assert code == 2 and "symmetric" in out.err


def test_quantum(capsys):
    code, rep, _ = run(capsys, "quantum", "--trials", 100, "--seed", 7)
    assert code == 0
    r = rep["result"]
    assert max(r["max_spectrum_error"], r["max_sum_rule_residual"], r["max_twin_agreement_error"],
               r["max_commutator_norm"]) < 1e-12
    code, one, _ = run(capsys, "quantum", "--trials", 1)
    assert code == 0 and one["result"]["trials"] == 1
    assert run(capsys, "quantum", "--trials", 0)[0] == 2


def test_quantum_byte_identical(capsys):
    main(["quantum", "--trials", "5", "--seed", "3"])
    a = capsys.readouterr().out
    main(["quantum", "--trials", "5", "--seed", "3"])
    assert capsys.readouterr().out == a
