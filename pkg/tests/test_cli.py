import json
import subprocess
import sys

import pytest

from prinparts.cli import SweepConfig, UsageError, cmd_dispatch, run_sweep
from prinparts.exact import QQ
from prinparts.jets import Side


def run(capsys, *argv):
    code = cmd_dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_transition_json(capsys):
    code, doc = run_json(capsys, "transition", "--k", "1", "--n", "-1", "--side", "left", "--format", "json")
    assert code == 0
    assert doc["matrix"][1][1] == [{"exp": -3, "num": "-1", "den": "1"}]
    assert doc["header"]["command"] == "transition"


def test_transition_oracle_agrees(capsys):
    _, a = run_json(capsys, "transition", "--k", "3", "--n", "2", "--side", "right")
    _, b = run_json(capsys, "transition", "--k", "3", "--n", "2", "--side", "right", "--oracle")
    assert a["matrix"] == b["matrix"]


def test_transition_text(capsys):
    code, out, _ = run(capsys, "transition", "--k", "1", "--n", "-1", "--side", "left", "--format", "text")
    assert code == 0 and "-t^(-3)" in out


def test_split_example(capsys):
    code, doc = run_json(capsys, "split", "--k", "2", "--n", "1", "--side", "left", "--ring", "q")
    assert code == 0
    assert doc["outcome"] == "certified" and doc["twists"] == [0, 0, -3]
    assert doc["certificate"]["checks"] == {"det0": True, "det1": True, "gluing": True}


def test_split_fallback_over_gf2(capsys):
    code, doc = run_json(capsys, "split", "--k", "1", "--n", "-4", "--side", "left", "--ring", "fp", "--p", "2")
    assert code == 0
    assert doc["outcome"] == "birkhoff" and doc["reason"] == "SystemEmpty"
    assert doc["birkhoff"]["remultiplies"] is True
    assert sum(doc["twists"]) == 2 * -4 - 2


def test_lemma_det2_example(capsys):
    code, doc = run_json(capsys, "lemma", "det2", "--a", "5", "--l", "1")
    assert code == 0
    assert doc["match"] is False and doc["direct"] == "-1" and doc["claimed"] == "1"


def test_lemma_sweeps(capsys):
    code, doc = run_json(capsys, "lemma", "det1", "--sweep")
    assert code == 0 and doc["matches"] == 225 and doc["mismatches"] == 0
    code, doc = run_json(capsys, "lemma", "det2", "--sweep", "--amax", "12", "--lmax", "6")
    assert code == 0 and len(doc["reports"]) == doc["matches"] + doc["mismatches"]


def test_birkhoff_command(capsys):
    code, doc = run_json(capsys, "birkhoff", "--k", "2", "--n", "1", "--side", "left", "--factors")
    assert code == 0 and doc["exponents"] == [0, 0, -3] and doc["remultiplies"]
    assert "A" in doc and "B" in doc


def test_verify_point(capsys):
    code, doc = run_json(capsys, "verify", "--k", "3", "--n", "-2", "--side", "left")
    assert code == 0 and doc["passed"]
    assert all(doc["checks"].values())


@pytest.mark.parametrize("argv", [
    ["transition", "--k", "0", "--n", "1", "--side", "left"],
    ["transition", "--k", "1", "--n", "1", "--side", "up"],
    ["split", "--k", "1", "--n", "1", "--side", "left", "--ring", "fp"],
    ["split", "--k", "1", "--n", "1", "--side", "left", "--ring", "fp", "--p", "4"],
    ["split", "--k", "1", "--n", "1", "--side", "left", "--p", "3"],
    ["lemma", "det2", "--a", "1", "--l", "1"],
    ["lemma", "det1", "--a", "1"],
    ["sweep", "--kmin", "0"],
    ["sweep", "--nmin", "3", "--nmax", "1"],
    ["verify", "--k", "1"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_unwritable_out_exits_2(capsys, tmp_path):
    code, _, _ = run(capsys, "lemma", "det2", "--a", "5", "--l", "1", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2


def test_verify_cert_valid_and_tampered(capsys, tmp_path):
    _, doc = run_json(capsys, "split", "--k", "2", "--n", "-1", "--side", "left")
    cert = doc["certificate"]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(cert))
    code, out = run_json(capsys, "verify", "--cert", str(good))
    assert code == 0 and out["verified"]

    cert["phi0"][0][0][0]["num"] = str(-int(cert["phi0"][0][0][0]["num"]))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    code, out = run_json(capsys, "verify", "--cert", str(bad))
    assert code == 1 and not out["verified"] and out["checks"]["gluing"] is False


def test_verify_cert_malformed(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(capsys, "verify", "--cert", str(p))[0] == 2
    p.write_text(json.dumps({"k": 1}))
    assert run(capsys, "verify", "--cert", str(p))[0] == 2


def test_out_file_matches_stdout(capsys, tmp_path):
    argv = ["split", "--k", "3", "--n", "1", "--side", "left"]
    _, stdout, _ = run(capsys, *argv)
    target = tmp_path / "o.json"
    code, printed, _ = run(capsys, *argv, "--out", str(target))
    assert code == 0 and printed == ""
    assert target.read_text() == stdout


def test_json_round_trip_is_stable(capsys):
    for argv in (["split", "--k", "2", "--n", "0", "--side", "right"],
                 ["lemma", "det2", "--sweep"],
                 ["sweep", "--kmax", "2", "--nmin", "-1", "--nmax", "1"]):
        _, out, _ = run(capsys, *argv)
        doc = json.loads(out)
        assert json.loads(json.dumps(doc, sort_keys=True, indent=2)) == doc
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


def test_byte_identical_runs(capsys):
    argv = ["sweep", "--kmax", "2", "--nmin", "-2", "--nmax", "2", "--ring", "fp", "--p", "2"]
    outs = {run(capsys, *argv)[1] for _ in range(2)}
    outs.add(run(capsys, *argv, "--jobs", "2")[1])
    assert len(outs) == 1


def test_sweep_summary(capsys):
    code, doc = run_json(capsys, "sweep", "--kmax", "3", "--nmin", "-3", "--nmax", "3", "--ring", "fp", "--p", "2")
    s = doc["summary"]
    assert code == 0 and s["failed"] == 0 and s["anomalies"] == []
    assert s["total"] == 3 * 7 * 2 == s["certified"] + s["birkhoff_fallback"]
    assert len(s["certificate_failures"]) == s["birkhoff_fallback"]
    assert sum(s["failure_reasons"].values()) == s["birkhoff_fallback"]


def test_sweep_text(capsys):
    code, out, _ = run(capsys, "sweep", "--kmax", "1", "--nmin", "0", "--nmax", "0", "--format", "text")
    assert code == 0 and out.count("PASS") == 2 and "total=2" in out


def test_sweep_config_validation():
    with pytest.raises(UsageError):
        SweepConfig(0, 1, 0, 0, (Side.LEFT,), QQ)
    assert run_sweep(SweepConfig(1, 1, 0, 0, (Side.RIGHT,), QQ))["summary"]["passed"] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prinparts", "lemma", "det2", "--a", "5", "--l", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["match"] is True
    proc = subprocess.run([sys.executable, "-m", "prinparts", "split", "--k", "x"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr
