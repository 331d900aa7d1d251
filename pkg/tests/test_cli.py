import json
import subprocess
import sys

import pytest

from thetatrees import checks
from thetatrees.cli import run


def test_spec_check_examples():
    assert run(["check", "theta-t1", "--n", "3"])[0] == 0
    assert run(["check", "conjecture-theta", "--alpha", "1,1"])[0] == 0
    assert run(["check", "gessel", "--word", "452163"])[0] == 0


def test_enumerate_counts():
    code, out = run(["enumerate", "trees", "--alpha", "1,1", "--content", "1,1,1"])
    assert code == 0 and len(out.splitlines()) == 5
    records = [json.loads(line) for line in out.splitlines()]
    assert sorted(r["inv"] for r in records) == [0, 0, 0, 0, 1]
    code, out = run(["enumerate", "polyominoes", "--m", "2", "--n", "2", "--standard"])
    assert code == 0 and len(out.splitlines()) == 5
    assert all(json.loads(line)["area"] == json.loads(line)["level"] for line in out.splitlines())
    assert len(run(["enumerate", "rst", "--alpha", "2"])[1].splitlines()) == 1


def test_compute_examples():
    assert run(["compute", "ru", "--word", "321"])[1].strip() == "q + 2"
    assert run(["compute", "macdonald", "--mu", "2"])[1].strip() == "m[2] + (q+1)*m[1,1]"
    code, out = run(["compute", "theta", "--lambda", "1,1", "--t1", "--against", "h"])
    assert code == 0
    assert "<F, h[1,1,1]> = q + 4" in out


def test_usage_errors():
    assert run(["check", "no-such-check"])[0] == 2
    assert run(["check", "hilbert", "--alpha", "3,3,3"])[0] == 2
    assert run(["check", "theta-t1", "--jobs", "0"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_failure_exit_code(monkeypatch):
    real = checks.CHECKS["examples"]
    broken = checks.Check(real.cells, lambda cell: ("1", "2", False, ""), real.limits)
    monkeypatch.setitem(checks.CHECKS, "examples", broken)
    code, out = run(["check", "examples"])
    assert code == 1
    assert "FAIL" in out


def test_json_schema():
    code, out = run(["check", "examples", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert [set(r) >= {"name", "parameters", "status", "lhs", "rhs"} for r in data["checks"]] == [True] * 5
    assert all("elapsed_ms" not in r for r in data["checks"])
    timed = json.loads(run(["check", "examples", "--format", "json", "--timing"])[1])
    assert all("elapsed_ms" in r for r in timed["checks"])


def test_csv_header():
    out = run(["check", "catalan", "--n", "2", "--format", "csv"])[1]
    assert out.splitlines()[0] == "name,parameters,status,lhs,rhs,note"


def test_byte_determinism():
    argv = ["check", "tutte-link", "--n", "4", "--format", "json", "--jobs", "1"]
    assert run(argv)[1] == run(argv)[1]


def test_jobs_do_not_change_report():
    argv = ["check", "hilbert", "--max-size", "3", "--format", "json"]
    assert run(argv + ["--jobs", "1"])[1] == run(argv + ["--jobs", "2"])[1]


def test_plot_dir(tmp_path):
    code, _ = run(["check", "examples", "--plot-dir", str(tmp_path)])
    assert code == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert "polyomino_bounce.png" in pngs and "tiered_tree.png" in pngs
    assert (tmp_path / "polyomino_bounce.png").read_bytes()[:4] == b"\x89PNG"


def test_cap_raise_warns(capsys):
    code, _ = run(["check", "catalan", "--n", "1", "--max-degree", "9"])
    assert code == 0
    assert "warning" in capsys.readouterr().err.lower()


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "thetatrees.cli", "compute", "ru", "--word", "21"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
