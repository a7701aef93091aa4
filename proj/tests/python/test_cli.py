import csv
import json
import os
import subprocess

import pytest

CLI = os.environ.get("TRIDERIV_CLI")
A = "T01*T02^3 + T11^3 + T21^2"

pytestmark = pytest.mark.skipif(not CLI, reason="TRIDERIV_CLI not set")


def run(*args, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full)


def test_analyze_json_is_deterministic():
    first = run("analyze", "--input", A)
    second = run("analyze", "--input", A)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert report["kind"] == "analysis"
    assert report["grading"]["group"]["text"] == "Z^2"


def test_analyze_text_and_file_input(tmp_path):
    src = tmp_path / "spec.txt"
    src.write_text(A + "\n")
    r = run("analyze", "--input", "@" + str(src), "--format", "text")
    assert r.returncode == 0
    assert "K = Z^2" in r.stdout


def test_exit_codes(tmp_path):
    assert run("analyze", "--input", "T01 + T11").returncode == 1
    assert run("analyze", "--input", A, "--bound", "1").returncode == 2
    assert run("analyze", "--input", "@" + str(tmp_path / "missing")).returncode == 3
    capped = run("scan", "--max-ni", "2", "--max-exp", "3", "--out", str(tmp_path / "x.jsonl"),
                 env={"TRIDERIV_CAP": "3"})
    assert capped.returncode == 3
    assert "TRIDERIV_CAP" in capped.stderr


def test_scan_independent_of_jobs(tmp_path):
    one, eight = tmp_path / "one.jsonl", tmp_path / "eight.jsonl"
    a = run("scan", "--max-ni", "2", "--max-exp", "2", "--dedupe", "--jobs", "1", "--out", str(one))
    b = run("scan", "--max-ni", "2", "--max-exp", "2", "--dedupe", "--jobs", "8", "--out", str(eight))
    assert a.returncode == 0 and b.returncode == 0
    assert one.read_bytes() == eight.read_bytes()
    assert a.stdout == b.stdout
    summary = json.loads(a.stdout)
    assert summary["specs"] == len(one.read_text().splitlines())


def test_scan_csv(tmp_path):
    out = tmp_path / "rows.csv"
    r = run("scan", "--max-ni", "1", "--max-exp", "2", "--out", str(out))
    assert r.returncode == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == json.loads(r.stdout)["specs"]
    assert {"spec", "polynomial", "type_I", "type_II", "max_nilpotency_index"} <= set(rows[0])


def test_cone_output(tmp_path):
    out = tmp_path / "cone.json"
    r = run("cone", "--input", A, "--basis", "[[-3,3],[1,1],[0,2],[0,3]]", "--out", str(out))
    assert r.returncode == 0
    data = json.loads(out.read_text())
    assert data["kind"] == "cone"
    assert data["basis_isomorphism"]
    assert len(data["derivations"]) == 2
    assert all(d["primitive"] for d in data["derivations"])
