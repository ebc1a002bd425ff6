import json
import subprocess
import sys

import pytest

from wenger.cli import main, parse_range


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("2,3,7") == [2, 3, 7]
    assert parse_range("4") == [4]


def test_build_edgelist(capsys, tmp_path):
    rc, out, err = run(capsys, "build", "--q", "2", "--m", "1", "--presentation", "W", "--format", "edgelist")
    assert rc == 0
    assert out.count("\n") == 8 and out.startswith("0 4\n")
    assert "8 vertices, 8 edges" in err
    path = tmp_path / "w.txt"
    rc, out, _ = run(capsys, "build", "--q", "2", "--m", "1", "--out", str(path))
    assert rc == 0 and path.read_text().count("\n") == 8
    assert "8 vertices" in out


def test_build_prime_power_and_rejection(capsys):
    rc, out, err = run(capsys, "build", "--q", "9", "--m", "1")
    assert rc == 0 and "p=3 e=2 modulus=[1, 0, 1]" in err
    assert out.count("\n") == 9**3
    rc, out, err = run(capsys, "build", "--q", "6", "--m", "1")
    assert rc == 2 and "6 is not a prime power" in err and out == ""


def test_build_matrixmarket_and_presentations(capsys):
    rc, out, _ = run(capsys, "build", "--q", "3", "--m", "1", "--format", "matrixmarket")
    lines = out.splitlines()
    assert lines[0] == "%%MatrixMarket matrix coordinate pattern symmetric"
    assert lines[1] == "18 18 27" and len(lines) == 29
    for pres in ("Wprime", "H", "Hprime"):
        rc, out, _ = run(capsys, "build", "--q", "3", "--m", "2", "--presentation", pres)
        assert rc == 0 and out.count("\n") == 81
    rc, _, err = run(capsys, "build", "--q", "4", "--m", "1", "--presentation", "H")
    assert rc == 2 and "prime" in err
    rc, _, err = run(capsys, "build", "--q", "3", "--m", "1", "--format", "json")
    assert rc == 2


def test_spectrum_all_agree(capsys):
    rc, out, _ = run(capsys, "spectrum", "--q", "3", "--m", "2", "--method", "all", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    assert d["schema"] == 1 and d["verdict"] == "AGREE"
    assert [t["provenance"] for t in d["tables"]] == ["closed-form", "census", "numeric"]
    closed = {e["value_exact"]: e["multiplicity"] for e in d["tables"][0]["entries"]}
    assert closed == {
        "sqrt(3*3)": 1, "sqrt(2*3)": 6, "sqrt(1*3)": 12, "0": 16,
        "-sqrt(1*3)": 12, "-sqrt(2*3)": 6, "-sqrt(3*3)": 1,
    }
    rc, out, _ = run(capsys, "spectrum", "--q", "3", "--m", "2", "--method", "all")
    assert rc == 0 and out.rstrip().endswith("AGREE")


def test_spectrum_closed_examples(capsys):
    rc, out, _ = run(capsys, "spectrum", "--q", "2", "--m", "1", "--format", "json")
    d = json.loads(out)["tables"][0]
    assert [(e["value_exact"], e["multiplicity"]) for e in d["entries"]] == [
        ("sqrt(2*2)", 1), ("sqrt(1*2)", 2), ("0", 2), ("-sqrt(1*2)", 2), ("-sqrt(2*2)", 1),
    ]
    rc, out, _ = run(capsys, "spectrum", "--q", "2", "--m", "5", "--format", "json")
    d = json.loads(out)["tables"][0]
    assert [e["multiplicity"] for e in d["entries"]] == [16, 32, 32, 32, 16]


def test_verify_suites(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "identity", "--q", "2..9", "--m", "1..4")
    assert rc == 0 and "FAIL" not in out.replace("0 failed", "")
    rc, out, _ = run(capsys, "verify", "--suite", "structure", "--q", "3", "--m", "1")
    assert rc == 0
    assert "diameter=4" in out and "girth=6" in out and "components=1" in out
    rc, out, _ = run(capsys, "verify", "--suite", "isomorphisms", "--q", "3", "--m", "2")
    assert rc == 0 and out.count("PASS") >= 3
    rc, out, _ = run(capsys, "verify", "--suite", "all", "--q", "2,3", "--m", "1..2", "--format", "json")
    d = json.loads(out)
    assert rc == 0 and d["failed"] == 0 and d["passed"] > 0


def test_verify_skips_non_prime_power(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "gram", "--q", "6", "--m", "1")
    assert rc == 0 and "SKIP" in out


def test_report(capsys):
    rc, out, _ = run(capsys, "report", "--q", "5", "--m", "1", "--format", "json")
    d = json.loads(out)
    assert (d["lambda2_exact"], d["conjecture"], d["ramanujan"]) == ("sqrt(1*5)", "HOLDS", "HOLDS")
    rc, out, _ = run(capsys, "report", "--q", "7", "--m", "6", "--format", "json")
    d = json.loads(out)
    assert d["lambda2_exact"] == "sqrt(6*7)" and d["conjecture"] == "REFUTED"
    rc, out, _ = run(capsys, "report", "--q", "4", "--m", "3")
    assert "sqrt(3*4)" in out and "HOLDS" in out


def test_census(capsys):
    rc, out, _ = run(capsys, "census", "--q", "3", "--m", "2", "--format", "json")
    d = json.loads(out)
    assert rc == 0
    assert [(r["tuples"], r["from_b"]) for r in d["rows"]] == [(8, 8), (12, 12), (6, 6)]


def test_repeated_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "wenger.cli", "spectrum", "--q", "4", "--m", "2", "--method", "all", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and json.loads(a.stdout)["verdict"] == "AGREE"


@pytest.mark.parametrize("argv", [["build", "--q", "2"], ["nope"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
