import json
import subprocess
import sys

import pytest

from hopfcyclic import reports
from hopfcyclic.cli import UsageError, main, parse_caps, parse_degrees, resolve_cartan


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_helpers():
    assert parse_caps("X=2, Y=3") == {"X": 2, "Y": 3}
    assert parse_caps(None) == {}
    assert parse_degrees("1..3", []) == [1, 2, 3]
    assert parse_degrees("2", []) == [2]
    assert parse_degrees(None, range(2)) == [0, 1]
    assert resolve_cartan("2,-1;-1,2") == "A2"
    assert resolve_cartan("A3") == "A3"
    for bad in ("X", "X=0", "X=a"):
        with pytest.raises(UsageError):
            parse_caps(bad)
    for bad in ("3..1", "a..b", "-1..2"):
        with pytest.raises(UsageError):
            parse_degrees(bad, [])
    with pytest.raises(UsageError):
        resolve_cartan("2,-2;-1,2")


def test_usage_errors(capsys):
    assert run(capsys, "hochschild", "--preset", "nope")[0] == 2
    assert run(capsys, "hochschild")[0] == 2
    assert run(capsys, "hochschild", "--preset", "uq:A1", "--degrees", "3..1")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "hp", "--preset", "gl1aff")[0] == 2
    assert run(capsys, "verify-hopf", "--preset", "h1s", "--mutate", "drop-delta1Y")[0] == 2
    assert run(capsys, "verify-hopf", "--preset", "h1s", "--jobs", "0")[0] == 2


def test_closure_exit_code(capsys):
    code, out, err = run(capsys, "cocycle-check", "--preset", "h1", "--caps", "X=1")
    assert code == 3 and "closure" in err and out == ""


def test_hochschild_uq_a1(capsys):
    code, out, _ = run(capsys, "hochschild", "--preset", "uq:A1", "--degrees", "0..3")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1
    assert doc["results"]["uq:A1"]["dims"] == {"0": 0, "1": 2, "2": 0, "3": 0}


def test_cocycle_check_h1s(capsys):
    code, out, _ = run(capsys, "cocycle-check", "--preset", "h1s")
    doc = json.loads(out)
    assert code == 0
    cocycles = doc["results"]["h1s"]["cocycles"]
    assert set(cocycles) == {"1 · Z", "1 · X ⊗ Y + -1 · Y ⊗ X + -1 · Z Y ⊗ Y"}
    assert all(v["coboundary_zero"] and v["nonzero_class"] for v in cocycles.values())


def test_mpi_check_exit_codes(capsys):
    assert run(capsys, "mpi-check", "--preset", "uq:A1")[0] == 0
    assert run(capsys, "mpi-check", "--preset", "uq:A1", "--coeff", "trivial")[0] == 1
    assert run(capsys, "mpi-check", "--preset", "w:1")[0] == 2


def test_verify_hopf_negative_control(capsys):
    code, out, _ = run(capsys, "verify-hopf", "--preset", "uq:A1", "--mutate", "primitive-E", "--length", "2")
    doc = json.loads(out)
    assert code == 1
    failures = doc["results"]["uq:A1[mutated:primitive-E]"]["failures"]
    assert failures and all("witness" in f for f in failures)


def test_jobs_do_not_change_results(capsys):
    a = run(capsys, "verify-hopf", "--preset", "h1s,gl1aff", "--length", "2")[1]
    b = run(capsys, "verify-hopf", "--preset", "h1s,gl1aff", "--length", "2", "--jobs", "2")[1]
    da, db = json.loads(a), json.loads(b)
    assert da["results"] == db["results"]


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "e1", "--preset", "h1", "--format", fmt)
    assert code == 0
    if fmt == "csv":
        assert out.splitlines()[0] == "block,i,j,degree,dim"
        assert "h1/E2,1,0,1,1" in out.splitlines()
    else:
        assert out.startswith("e1: PASS")


def test_json_is_deterministic(capsys):
    argv = ["hp", "--preset", "h1,uq:A1", "--seed", "5"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    proc = subprocess.run([sys.executable, "-m", "hopfcyclic.cli", *argv], capture_output=True, text=True)
    assert proc.stdout == first


def test_report_shape():
    doc = reports.report("x", {"b": 1, "a": 2}, {"r": {(1, 0): 2}}, True, ["computed"])
    text = reports.to_json(doc)
    assert json.loads(text)["schema"] == 1
    assert text.index('"a"') < text.index('"b"')
