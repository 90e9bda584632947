from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qgalois.cli import main, parse_suites
from qgalois.errors import ConfigurationError


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_full_suite_small(capsys):
    code, out, _ = run(["verify", "--n", "2", "--m", "1", "--mu", "1", "--window", "3",
                        "--suite", "all"], capsys)
    assert code == 0
    assert "result: PASS" in out


def test_verify_mu_zero(capsys):
    code, out, _ = run(["verify", "--n", "3", "--m", "1", "--mu", "0", "--window", "3"], capsys)
    assert code == 0, out


def test_gcd_violation_is_usage_error(capsys):
    code, _, err = run(["verify", "--n", "4", "--m", "2"], capsys)
    assert code == 2
    assert "coprime" in err


@pytest.mark.parametrize("args", [
    ["verify", "--n", "3", "--m", "1", "--lambda-exp", "3"],
    ["verify", "--n", "1", "--m", "1"],
    ["verify", "--n", "3", "--m", "1", "--window", "-1"],
    ["verify", "--n", "3", "--m", "1", "--suite", "nonsense"],
    ["verify", "--n", "3"],
    ["eval", "b", "--n", "3", "--m", "1", "--map", "unknown"],
])
def test_usage_errors(args, capsys):
    code, _, _ = run(args, capsys)
    assert code == 2


def test_parse_error_reports_position(capsys):
    code, _, err = run(["eval", "a*)", "--n", "3", "--m", "1", "--map", "S"], capsys)
    assert code == 2
    assert "position 2" in err
    code, _, err = run(["verify", "--n", "3", "--m", "1", "--mu", "z^"], capsys)
    assert code == 2 and "position 2" in err


def test_failure_exit_code(capsys, monkeypatch):
    from qgalois import cli
    real = cli.run_suite

    def broken(ctx, suite):
        rep = real(ctx, suite)
        rep.expect("planted", "w", 1, 2)
        return rep

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(["verify", "--n", "2", "--m", "1", "--suite", "cocycle"], capsys)
    assert code == 1
    assert "[FAIL] planted" in out


def test_internal_error_exit_code(capsys, monkeypatch):
    from qgalois import cli
    from qgalois.errors import VerificationError

    def boom(ctx, suite):
        raise VerificationError("inconsistent system")

    monkeypatch.setattr(cli, "run_suite", boom)
    code, _, err = run(["verify", "--n", "2", "--m", "1", "--suite", "hopf"], capsys)
    assert code == 3
    assert "inconsistent" in err


def test_table_rows(capsys):
    code, out, _ = run(["table", "--n", "2", "--m", "1", "--mu", "1"], capsys)
    assert code == 0
    assert "delta_X = x^1" in out.splitlines()
    code, out, _ = run(["table", "--n", "3", "--m", "1", "--mu", "1"], capsys)
    lines = out.splitlines()
    assert "theta_X(y) = z^1*y" in lines
    assert "tau = z^2" in lines
    assert "C relations = u*w = z^1*w*u, w^3 = u^3 - 1" in lines


@pytest.mark.parametrize("expr,mp,n,m,want", [
    ("y", "alpha", 3, 1, "1 (x) b + y (x) a^1"),
    ("y", "alpha", 5, 2, "1 (x) b + y (x) a^2"),
    ("1", "theta_X", 3, 1, "1"),
    ("a*b", "S", 3, 1, "-z^2*a^-2*b"),
    ("a*b", "S", 5, 2, "-z^3*a^-3*b"),
    ("b^2", "phi", 3, 1, "1"),
    ("x", "gamma", 3, 1, "u^1 (x) x^1"),
    ("u", "beta_C", 3, 1, "x^1 (x) x^-1"),
    ("b*a", "normal", 3, 1, "z^2*a^1*b"),
    ("y", "d", 3, 1, "1"),
])
def test_eval(expr, mp, n, m, want, capsys):
    code, out, _ = run(["eval", expr, "--n", str(n), "--m", str(m), "--map", mp], capsys)
    assert code == 0
    assert out.strip() == want


def test_json_is_deterministic(tmp_path, monkeypatch):
    args = ["verify", "--n", "2", "--m", "1", "--suite", "hopf,identities,reflection",
            "--format", "json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    monkeypatch.setenv("QGALOIS_THREADS", "3")
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["schema"] == 1
    assert data["status"] == "pass"
    assert "timing" not in data
    assert data["config"]["n"] == 2


def test_timing_is_opt_in(tmp_path):
    out = tmp_path / "t.json"
    main(["verify", "--n", "2", "--m", "1", "--suite", "cocycle", "--format", "json",
          "--timing", "--out", str(out)])
    assert "cocycle" in json.loads(out.read_text())["timing"]


def test_parse_suites():
    assert parse_suites("hopf") == ("hopf",)
    assert parse_suites("i,v,hopf") == (("identities", "i", "v"), "hopf")
    assert parse_suites("identities,i") == ("identities",)
    assert "bi-galois" in parse_suites("all")
    with pytest.raises(ConfigurationError):
        parse_suites(" , ")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qgalois.cli", "eval", "x", "--n", "2",
                           "--m", "1", "--map", "alpha"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "x^1 (x) a^1"
