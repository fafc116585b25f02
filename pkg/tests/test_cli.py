import json
import subprocess
import sys

import pytest

from parkgraph.cli import main, parse_float_list, parse_int_list
from parkgraph.errors import DomainError

GOLDEN19 = {"kind": "mapping", "n": 19, "succ": [5, 7, 1, 12, 13, 10, 14, 10, 2, 13, 5, 18, 12, 7, 5, 14, 13, 5, 14]}


@pytest.fixture
def golden_file(tmp_path):
    p = tmp_path / "golden19.json"
    p.write_text(json.dumps(GOLDEN19))
    return str(p)


def test_simulate_success_and_failure(golden_file, capsys):
    assert main(["simulate", golden_file, "--prefs", "10,5,14,10,13,14"]) == 0
    assert capsys.readouterr().out == "parked pi=10,5,14,13,12,7\n"
    assert main(["simulate", golden_file, "--prefs", "10,5,14,10,13,14,7"]) == 1
    assert "driver 7 failed" in capsys.readouterr().out


def test_simulate_json_and_prefs_file(golden_file, tmp_path, capsys):
    prefs = tmp_path / "s.json"
    prefs.write_text('{"prefs": [10, 5, 14]}')
    assert main(["simulate", golden_file, "--prefs-file", str(prefs), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"success": True, "pi": [10, 5, 14]}


def test_simulate_input_errors(tmp_path, golden_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["simulate", str(bad), "--prefs", "1"]) == 2
    assert main(["simulate", str(tmp_path / "missing.json"), "--prefs", "1"]) == 2
    assert main(["simulate", golden_file, "--prefs", "20"]) == 2
    assert main(["simulate", golden_file]) == 2


def test_count_all_oracles_match(capsys):
    assert main(["count", "--mode", "brute,exact,series", "--n", "1..4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,m,F,M,match"
    assert len(lines) == 1 + sum(n + 1 for n in range(1, 5))
    assert all(line.endswith(",true") for line in lines[1:])
    assert "2,2,6,12,true" in lines


def test_count_header_bytes_and_json(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["count", "--n", "3", "--m", "0,3", "--out", str(out)]) == 0
    assert out.read_bytes() == b"n,m,F,M,match\n3,0,9,27,true\n3,3,132,396,true\n"
    assert main(["count", "--n", "2", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[-1] == {"n": 2, "m": 2, "F": 6, "M": 12, "match": True}


def test_count_budget_errors(monkeypatch, tmp_path):
    monkeypatch.setenv("PARKGRAPH_MAX_BRUTE_N", "3")
    out = tmp_path / "never.csv"
    assert main(["count", "--mode", "brute", "--n", "1..4", "--out", str(out)]) == 2
    assert not out.exists()
    assert main(["count", "--mode", "series", "--n", "5", "--order", "3"]) == 2
    assert main(["count", "--mode", "guess", "--n", "2"]) == 2


def test_bijection_round_trip_bytes(tmp_path, capsys):
    src = tmp_path / "in.json"
    src.write_text('{"w": 3, "prefs": [1, 1], "tree": {"parent": [2, 0, 2], "kind": "tree", "n": 3}}')
    fwd = tmp_path / "fwd.json"
    back = tmp_path / "back.json"
    assert main(["bijection", str(src), "--out", str(fwd)]) == 0
    assert json.loads(fwd.read_text())["mapping"]["kind"] == "mapping"
    assert main(["bijection", "--direction", "inv", str(fwd), "--out", str(back)]) == 0
    canonical = json.dumps(json.loads(src.read_text()), sort_keys=True, separators=(",", ":")) + "\n"
    assert back.read_text() == canonical


def test_bijection_full_load_and_non_parking(tmp_path):
    ok = tmp_path / "ok.json"
    ok.write_text('{"tree": {"kind": "tree", "parent": [0, 1]}, "prefs": [2, 2], "w": 2}')
    assert main(["bijection", str(ok)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"tree": {"kind": "tree", "parent": [0, 1]}, "prefs": [1, 1], "w": 1}')
    assert main(["bijection", str(bad)]) == 1
    inv = tmp_path / "inv.json"
    inv.write_text('{"mapping": {"kind": "mapping", "succ": [1, 2]}, "prefs": [1, 1]}')
    assert main(["bijection", "--direction", "inv", str(inv)]) == 1
    assert main(["bijection", str(inv)]) == 2


def test_phase_csv(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["phase", "--rho", "0.1..0.9:0.1", "--n", "200", "--trials", "500", "--seed", "4"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "rho,n,p_exact,p_mc,mc_stderr,asymptotic,regime"
    assert len(lines) == 10
    ps = [float(line.split(",")[2]) for line in lines[1:]]
    assert all(x > y for x, y in zip(ps, ps[1:]))
    assert b"\r" not in a.read_bytes()
    assert main(["phase", "--rho", "0", "--n", "30"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split(",")
    assert row[2] == "1" and row[3] == "" and row[6] == "sub-critical"


def test_sample(capsys):
    assert main(["sample", "--n", "5", "--count", "3", "--seed", "1"]) == 0
    first = capsys.readouterr().out
    assert len(first.splitlines()) == 3
    assert main(["sample", "--n", "5", "--count", "3", "--seed", "1"]) == 0
    assert capsys.readouterr().out == first
    assert main(["sample", "--kind", "mapping", "--n", "4", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("index,kind,n,succ\n0,mapping,4,")


def test_verify_quick(capsys):
    assert main(["verify", "--quick"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.rstrip().endswith("checks passed")


def test_list_parsers():
    assert parse_int_list("1..3,6") == [1, 2, 3, 6]
    assert parse_float_list("0.1..0.3:0.1") == [0.1, 0.2, 0.3]
    with pytest.raises(DomainError):
        parse_int_list("a")
    with pytest.raises(DomainError):
        parse_float_list("0.1..0.5:0")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "parkgraph.cli", "count", "--n", "2", "--m", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "n,m,F,M,match\n2,2,6,12,true\n"
