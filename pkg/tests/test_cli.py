import csv
import io
import json
import subprocess
import sys

import pytest

from qmoments.cli import (decimal_render, main, parse_q_list, parse_range,
                          parse_tolerance)


def run_cli(args):
    out = io.StringIO()
    import contextlib
    with contextlib.redirect_stdout(out):
        code = main(args)
    return code, out.getvalue()


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_helpers():
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("4") == [4]
    from fractions import Fraction as F
    assert parse_q_list("1/3,1/2") == [F(1, 3), F(1, 2)]
    assert parse_tolerance("1/10^10") == F(1, 10**10)
    assert parse_tolerance("3/100") == F(3, 100)
    with pytest.raises(ValueError):
        parse_q_list("3/2")


def test_decimal_render_round_half_even():
    assert decimal_render("1/3").startswith("0.3333333333333333333333333333")
    assert decimal_render("2") == "2"
    assert len(decimal_render("1/7").lstrip("0.").replace(".", "")) <= 30


def test_moments_classical_gue():
    code, out = run_cli(["moments", "--family", "classical-gue",
                         "--k", "0..2", "--n", "3"])
    assert code == 0
    rows = parse_csv(out)
    assert [r["value_exact"] for r in rows] == ["1", "3", "19"]


def test_moments_qhermite_cross():
    code, out = run_cli(["moments", "--family", "q-hermite", "--q", "1/2",
                         "--k", "1..3", "--n", "1..4",
                         "--methods", "residue,hyper"])
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 24
    by_point = {}
    for r in rows:
        by_point.setdefault((r["k"], r["n"]), set()).add(r["value_exact"])
    assert all(len(v) == 1 for v in by_point.values())


def test_moments_qlaguerre_anchor():
    code, out = run_cli(["moments", "--family", "q-laguerre", "--alpha", "0",
                         "--q", "1/2", "--k", "1", "--n", "1"])
    assert code == 0
    rows = parse_csv(out)
    assert all(r["value_exact"] == "1" for r in rows)


def test_csv_json_value_identical():
    args = ["moments", "--family", "q-hermite", "--q", "1/3,1/2",
            "--k", "1..2", "--n", "1..2"]
    code1, out_csv = run_cli(args + ["--format", "csv"])
    code2, out_json = run_cli(args + ["--format", "json"])
    assert code1 == code2 == 0
    csv_vals = [(r["family"], r["method"], r["k"], r["n"], r["q"], r["value_exact"])
                for r in parse_csv(out_csv)]
    doc = json.loads(out_json)
    json_vals = [(r["family"], r["method"], str(r["k"]), str(r["n"]), r["q"],
                  r["value_exact"]) for r in doc["rows"]]
    assert csv_vals == json_vals


def test_determinism():
    args = ["verify", "--suite", "transforms", "--count", "4",
            "--format", "json"]
    _, out1 = run_cli(args)
    _, out2 = run_cli(args)
    assert out1 == out2


def test_parallel_matches_serial():
    args = ["moments", "--family", "q-laguerre", "--q", "1/2", "--alpha", "0..1",
            "--k", "1..2", "--n", "1..2"]
    _, serial = run_cli(args + ["--parallel", "1"])
    _, par = run_cli(args + ["--parallel", "2"])
    assert serial == par


def test_verify_suites_exit_zero():
    code, out = run_cli(["verify", "--suite", "qh-recurrence", "--q", "1/3",
                         "--K", "5"])
    assert code == 0
    code, out = run_cli(["verify", "--suite", "qh-saalschutz", "--q", "1/2",
                         "--k", "1..4"])
    assert code == 0
    code, out = run_cli(["verify", "--suite", "classical-all", "--kmax", "4",
                         "--nmax", "4", "--alphamax", "2"])
    assert code == 0


def test_verify_oracle_ql_factor_report():
    code, out = run_cli(["verify", "--suite", "oracle-ql", "--q", "1/2",
                         "--alpha", "0", "--k", "1..2", "--n", "1..2",
                         "--tol", "1/10^30", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    reports = doc["summary"]["factor_reports"]
    assert reports and reports[0]["unilateral"]["constant_across_grid"]


def test_limit_command():
    code, out = run_cli(["limit", "--family", "q-hermite", "--k", "2",
                         "--n", "2", "--q", "9/10,99/100,999/1000"])
    assert code == 0
    rows = parse_csv(out)
    assert rows[0]["method"].endswith("->9")  # Q_2(2) = 2*4+1
    code, _ = run_cli(["limit", "--family", "q-laguerre", "--k", "1",
                       "--n", "3", "--alpha", "2", "--q", "9/10,99/100"])
    assert code == 0
    code, out = run_cli(["limit", "--family", "q-hermite", "--k", "1",
                         "--n", "1", "--q", "9/10,99/100,999/1000"])
    assert code == 0
    rows = parse_csv(out)
    assert [r["value_exact"] for r in rows] == ["9/10", "99/100", "999/1000"]


def test_usage_errors_exit_two():
    code, _ = run_cli(["moments", "--family", "q-hermite", "--q", "3/2",
                       "--k", "1", "--n", "1"])
    assert code == 2
    code, _ = run_cli(["verify", "--suite", "no-such-suite"])
    assert code == 2
    code, _ = run_cli(["limit", "--family", "q-hermite", "--k", "1", "--n", "1",
                       "--q", "1/2,1/3"])  # not increasing
    assert code == 2


def test_max_terms_env(monkeypatch):
    monkeypatch.setenv("QMOMENTS_MAX_TERMS", "512")
    from qmoments.qcalc import default_policy
    assert default_policy().max_index == 512


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "qmoments.cli", "moments", "--family",
         "classical-gue", "--k", "1", "--n", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "classical-gue" in proc.stdout
