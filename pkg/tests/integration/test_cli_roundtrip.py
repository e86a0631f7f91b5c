"""
Запуск CLI отдельным процессом: gen -> build -> verify -> export.
"""
import json
import subprocess
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[2]


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "app", *args],
        cwd=PROJECT_ROOT, capture_output=True, text=True, timeout=600,
    )


def test_cli_roundtrip(tmp_path):
    points = tmp_path / "pts.json"
    spanner = tmp_path / "h.csv"
    report = tmp_path / "report.json"

    result = run_cli("gen", "--kind", "clustered", "--n", "20", "--seed", "2", "--out", str(points))
    assert result.returncode == 0, result.stderr

    result = run_cli("build", "--in", str(points), "--eps", "0.4", "--k", "2", "--out", str(spanner))
    assert result.returncode == 0, result.stderr
    stats = json.loads(result.stdout)
    assert stats["n"] == 20

    result = run_cli(
        "verify", "--points", str(points), "--spanner", str(spanner),
        "--eps", "0.4", "--k", "2", "--report", str(report),
    )
    assert result.returncode == 0, result.stderr + result.stdout
    assert json.loads(report.read_text())["mode"] == "exhaustive"

    dot = tmp_path / "h.dot"
    result = run_cli("export", "--spanner", str(spanner), "--format", "dot", "--out", str(dot))
    assert result.returncode == 0, result.stderr
    assert "--" in dot.read_text()
