import subprocess
import sys

import pytest

from indexarq import harness
from indexarq.cli import main


def run(tmp_path, *args):
    out = tmp_path / "out.csv"
    code = main([*args, "--out", str(out), "--quiet"])
    return code, (harness.read_csv(out) if out.exists() else None)


def test_single_point(tmp_path):
    code, rows = run(tmp_path, "--m", "5", "--n", "20", "--epsilon", "0.1", "--trials", "3")
    assert code == 0
    assert [r["protocol"] for r in rows] == ["index-arq", "sr", "metzner", "ideal-fec"]


def test_epsilon_range(tmp_path):
    code, rows = run(tmp_path, "--protocol", "sr", "--m", "3", "--n", "10",
                     "--epsilon", "0:0.1:0.05", "--trials", "2")
    assert code == 0
    assert [r["epsilon"] for r in rows] == ["0.0", "0.0", "0.05", "0.05", "0.1", "0.1"]


def test_n_sweep(tmp_path):
    code, rows = run(tmp_path, "--protocol", "metzner", "--m", "3", "--n-sweep", "10,50",
                     "--epsilon", "0.05", "--trials", "2")
    assert code == 0
    assert [r["n"] for r in rows] == ["10", "10", "50", "50"]


@pytest.mark.parametrize("args", [
    ["--m", "3", "--n-sweep", "10,20", "--epsilon", "0.1,0.2"],
    ["--m", "3", "--epsilon", "0.1"],
    ["--m", "3", "--n", "10", "--epsilon", "1.0"],
    ["--m", "3", "--n", "10", "--epsilon", "0.1", "--protocol", "gbn"],
    ["--m", "3", "--n", "10", "--epsilon", "0.1", "--trials", "0"],
    ["--m", "3", "--n", "10", "--epsilon", "0.1", "--seed", "-1"],
])
def test_config_errors(tmp_path, args):
    code, rows = run(tmp_path, *args)
    assert code == 1 and rows is None


def test_max_rounds_abort(tmp_path):
    args = ["--protocol", "sr", "--m", "20", "--n", "5", "--epsilon", "0.9",
            "--trials", "2", "--max-rounds-factor", "1"]
    code, _ = run(tmp_path, *args)
    assert code == 2
    code, rows = run(tmp_path, *args, "--allow-aborts")
    assert code == 0 and rows[0]["aborted_trials"] == "2"


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nprotocol = sr\nm=4\nn = 12\nepsilon=0.2\ntrials=2\nseed=7\n")
    code, rows = run(tmp_path, "--config", str(cfg), "--seed", "8")
    assert code == 0
    assert rows[0]["protocol"] == "sr" and rows[0]["n"] == "12" and rows[0]["seed"] == "8"


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("m 4\n")
    assert run(tmp_path, "--config", str(cfg))[0] == 1
    assert run(tmp_path, "--config", str(tmp_path / "missing.cfg"))[0] == 1


def test_payload_mode(tmp_path):
    code, rows = run(tmp_path, "--m", "4", "--n", "12", "--epsilon", "0.2", "--trials", "2",
                     "--mode", "payload", "--payload-len", "8")
    assert code == 0 and len(rows) == 4


def test_module_entry_point_writes_stdout():
    res = subprocess.run([sys.executable, "-m", "indexarq", "--protocol", "sr", "--m", "2",
                          "--n", "5", "--epsilon", "0", "--trials", "1"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[0] == ",".join(harness.CSV_COLUMNS)
    assert "sr m=2 n=5" in res.stderr
