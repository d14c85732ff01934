import json
import subprocess
import sys

import pytest

from looijenga import cli


def run(*argv):
    return subprocess.run([sys.executable, "-m", "looijenga.cli", *argv], capture_output=True, text=True)


def test_dt_for_pair():
    r = run("dt", "--quiver", "P2(1,4)", "--dmax", "12")
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    assert [row["dt_num"] for row in obj["invariants"]] == [1, 1, 1, 2, 5, 13, 35, 100, 300, 925, 2915, 9386]


def test_dt_from_file(tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("1\n2\n")
    r = run("dt", "--quiver", str(f), "--dmax", "5", "--format", "csv")
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "d,dt_num,omega"


def test_output_is_byte_identical():
    a = run("verify", "log-local", "dP2(1,2)", "--box", "3")
    b = run("verify", "log-local", "dP2(1,2)", "--box", "3")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_verify_exit_codes():
    assert run("verify", "log-open", "dP2(1,0,0)", "--box", "3").returncode == 0
    # the known red classes make the tame dP3 log-open suite fail
    r = run("verify", "log-open", "dP3(1,1)", "--box", "2")
    assert r.returncode == 1 and "FAIL" in r.stderr


def test_conjectural_checks_gate_only_when_strict():
    rep = cli.verify_log_open("dP3(0,2)", 2)
    assert rep.summary()["conjectural"]["total"] > 0
    assert rep.passed() and rep.passed(strict=True)


def test_table_columns():
    r = run("table", "P2(1,4)", "--dmax", "5", "--set", "loc,kp", "--format", "csv")
    rows = [line.split(",") for line in r.stdout.splitlines()[1:]]
    assert [abs(int(row[2])) for row in rows] == [1, 1, 1, 2, 5]


def test_empty_table():
    r = run("table", "P2(1,4)", "--dmax", "0")
    assert r.returncode == 0 and json.loads(r.stdout)["rows"] == []


def test_single_invariants():
    assert json.loads(run("log", "P2(1,4)", "--degree", "1").stdout)["genus_coeffs"][0] == "2"
    assert json.loads(run("local", "P2(1,4)", "--degree", "2").stdout)["KP"] == "1"
    assert json.loads(run("bps", "F0(0,0,0,0)", "--degree", "2,2").stdout)["omega_str"] == "q - 2 + q^-1"
    assert json.loads(run("scatter", "P(1,1,2)", "--degree", "1").stdout)["log_str"] == "q + 1 + q^-1"
    assert json.loads(run("open", "P(1,1,1)", "--degree", "1").stdout)["O_genus0"] == "-1"


def test_list_pairs():
    r = run("list-pairs", "--format", "csv")
    assert len(r.stdout.splitlines()) == 19


def test_errors_exit_two():
    r = run("log", "dP9(0,0)", "--degree", "1")
    assert r.returncode == 2 and r.stderr.startswith("error:")
    assert run("dt", "--quiver", "dP4(1,0)").returncode == 2


def test_identities_suite():
    rep = cli.verify_identities("dp1binom", 3)
    assert rep.records and rep.passed(strict=True)
    with pytest.raises(ValueError):
        cli.verify_identities("nope", 2)
