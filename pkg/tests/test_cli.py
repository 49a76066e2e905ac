"""Command-line harness: loading, reports, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from hochduflo.cli import build_parser, load_lie_algebra, main
from hochduflo.exact import StructuralError


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "hochduflo.cli"] + args,
                          capture_output=True, text=True, timeout=600)
    return proc


def test_bundled_fixtures_load():
    assert load_lie_algebra("sl2").dimension == 3
    assert load_lie_algebra("heisenberg").dimension == 3
    assert load_lie_algebra("aff1").dimension == 2


def test_broken_fixture_names_triple(tmp_path):
    doc = {"name": "broken", "dimension": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"3": "1", "1": "1"}},
        {"i": 3, "j": 1, "coeffs": {"1": "2"}},
        {"i": 3, "j": 2, "coeffs": {"2": "-2"}}]}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(StructuralError) as err:
        load_lie_algebra(str(path))
    assert "(" in str(err.value)          # the violating triple is printed


def test_rationals_parse(tmp_path):
    doc = {"name": "halves", "dimension": 2, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"2": "1/2"}}]}
    path = tmp_path / "halves.json"
    path.write_text(json.dumps(doc))
    g = load_lie_algebra(str(path))
    from fractions import Fraction
    assert g.bracket(0, 1) == {1: Fraction(1, 2)}


def test_cohomology_table_sl2():
    proc = run_cli(["--json", "cohomology", "ce", "--lie", "sl2"])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert [out["dims"][str(n)] for n in range(4)] == [1, 0, 0, 1]


def test_duflo_series_abelian():
    proc = run_cli(["--json", "duflo", "series", "--lie", "abelian2",
                    "--order", "4"])
    out = json.loads(proc.stdout)
    assert out["J"] == {"1": "1"}
    assert out["determinant_matches"] and out["invariant"]


def test_hh_dual_odd_window():
    proc = run_cli(["--json", "hh", "--algebra", "dual-odd",
                    "--lie", "abelian1", "--window", "5"])
    out = json.loads(proc.stdout)
    assert out["interior_dims"]["0"] == 5


def test_suite_runs_and_replays():
    args = ["--json", "suite", "sum-example", "--lie", "abelian1",
            "--seed", "3"]
    a = run_cli(args)
    b = run_cli(args)
    assert a.returncode == 0
    assert a.stdout == b.stdout           # bitwise reproducible


def test_unknown_suite_fails_loudly():
    proc = run_cli(["suite", "no-such-suite"])
    assert proc.returncode == 2
    assert "unknown suite" in proc.stderr


def test_suite_exit_code_reflects_failures(monkeypatch):
    # a passing suite returns zero through the in-process entry point
    assert main(["suite", "sum-example", "--lie", "abelian1"]) == 0
