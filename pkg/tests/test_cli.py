import json
import subprocess
import sys

import pytest

from tcdicke.cli import main
from tcdicke.sweep import parse_crossings_csv, parse_region_csv, parse_staircase_csv


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_ground_below_transition(capsys):
    doc = run_json(capsys, "ground", "--m", "64", "--g", "0.5", "--eta", "0.01")
    assert doc["kind"] == "ground" and doc["k_star"] == 0
    assert doc["weights"] == [1.0]
    assert doc["inputs"] == {"M": 64, "g": 0.5, "eta": 0.01, "k_max": None}


def test_crossings_csv(capsys):
    assert main(["crossings", "--m", "2", "--eta", "0.1", "--k-from", "1", "--k-to", "1", "--format", "csv"]) == 0
    rows = parse_crossings_csv(capsys.readouterr().out)
    assert rows[0][0] == 1 and abs(rows[0][1] - 1.0) <= 1e-10 and rows[0][2] == 1.0


def test_perturb_row(capsys):
    doc = run_json(capsys, "perturb", "--m", "64", "--g", "1.5", "--eta", "1e-4", "--k", "10")
    (row,) = doc["rows"]
    assert row["k"] == 10
    assert row["perturbative"] == pytest.approx(-4.1336e-3, abs=1e-7)
    assert abs(row["exact"] - row["perturbative"]) < 1e-6


def test_block(capsys):
    doc = run_json(capsys, "block", "--m", "2", "--g", "2", "--eta", "0.01", "--k", "1")
    assert doc["diag"] == pytest.approx([0.99, 0.0]) and doc["sub"] == pytest.approx([-0.2])


def test_staircase(capsys, tmp_path):
    out = tmp_path / "st.csv"
    argv = ["staircase", "--m", "64", "--eta", "1e-5", "--g-min", "1.2", "--g-max", "1.2", "--g-steps", "1"]
    assert main(argv + ["--format", "csv", "--out", str(out)]) == 0
    assert parse_staircase_csv(out.read_text()) == [(1.2, 10)]
    doc = run_json(capsys, *argv)
    assert doc["points"] == [[1.2, 10]]


def test_sweep_threads_identical(tmp_path):
    common = ["sweep", "--m", "8", "--g-steps", "5", "--eta-steps", "4", "--quantity", "weight",
              "--threshold", "0.9", "--format", "csv"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(common + ["--threads", "1", "--out", str(a)]) == 0
    assert main(common + ["--threads", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = parse_region_csv(a.read_text())
    assert len(rows) == 20 and all(m is not None for *_, m in rows)


def test_protocol_seeded(capsys):
    argv = ["protocol", "--m", "2", "--g", "2", "--eta", "0.01", "--samples", "1000", "--seed", "42"]
    a = run_json(capsys, *argv)
    b = run_json(capsys, *argv)
    assert a == b and a["inputs"]["seed"] == 42


def test_oracle_check(capsys):
    doc = run_json(capsys, "oracle-check", "--m", "3", "--g", "1.5", "--eta", "0.01", "--n-max", "30")
    assert max(doc["differences"].values()) <= 1e-10


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m": 64, "g": 0.5, "eta": 0.01}))
    doc = run_json(capsys, "ground", "--config", str(cfg))
    assert doc["k_star"] == 0
    doc = run_json(capsys, "ground", "--config", str(cfg), "--g", "6", "--eta", "1e-5")
    assert doc["k_star"] == 32


def test_domain_error_exit_1(capsys):
    assert main(["ground", "--m", "4", "--g", "1", "--eta", "0"]) == 1
    assert main(["ground", "--m", "2", "--g", "30", "--eta", "2"]) == 1
    assert "cap" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys, tmp_path):
    assert main(["ground", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err
    assert main(["nosuchcommand"]) == 2
    assert main(["ground", "--m", "4"]) == 2
    assert main(["ground", "--m", "4", "--g", "1", "--eta", "0.1", "--format", "csv"]) == 2
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert main(["ground", "--config", str(cfg)]) == 2
    assert main(["sweep", "--m", "4", "--threads", "0"]) == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "tcdicke", "ground", "--m", "2", "--g", "2", "--eta", "0.01"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["k_star"] == 1
    res = subprocess.run([sys.executable, "-m", "tcdicke", "ground", "--nope"], capture_output=True, text=True)
    assert res.returncode == 2
