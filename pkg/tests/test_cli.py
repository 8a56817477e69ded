import argparse
import subprocess
import sys

import pytest

from ufdecoder.cli import main, parse_grid, parse_sizes
from ufdecoder.harness import CSV_HEADER, ExperimentSummary


def test_grid_list():
    assert parse_grid("0.1,0.2") == [0.1, 0.2]


def test_grid_range_includes_stop():
    assert parse_grid("0.090:0.108:0.002") == [round(0.090 + 0.002 * i, 3) for i in range(10)]


@pytest.mark.parametrize("text", ["", "a,b", "0.1:0.05:0.01", "0:1:0", "0:1"])
def test_bad_grids(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_grid(text)


def test_sizes():
    assert parse_sizes("8,16,32") == [8, 16, 32]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_sizes("8,x")


def test_run_writes_csv(tmp_path):
    out = tmp_path / "r.csv"
    code = main(["run", "--sizes", "4,6", "--pz", "0.05,0.1", "--pe", "0.1", "--trials", "200", "--seed", "4",
                 "--strategy", "uniform", "--out", str(out)])
    assert code == 0
    rows = ExperimentSummary.read_csv(out).rows
    assert [(r.L, r.p_z) for r in rows] == [(4, 0.05), (4, 0.1), (6, 0.05), (6, 0.1)]
    assert all(r.strategy == "uniform" and r.trials == 200 and r.p_e == 0.1 for r in rows)


def test_run_to_stdout_with_min_failures(capsys):
    assert main(["run", "--sizes", "4", "--pz", "0.1", "--min-failures", "5", "--threads", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].split(",")[6] == "5"


def test_run_rejects_unwritable_path(tmp_path, capsys):
    code = main(["run", "--sizes", "4", "--pz", "0.1", "--trials", "10", "--out", str(tmp_path / "no" / "x.csv")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_trial_trace(capsys):
    assert main(["trial", "-L", "5", "--pz", "0.1", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    for word in ("syndrome", "validated", "growth rounds", "correction", "class bits"):
        assert word in out


def test_timing(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["timing", "--sizes", "4,6", "--trials", "100", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "L,n,mean_decode_ns" and len(lines) == 3
    assert "slope" in capsys.readouterr().err


def test_crossing_from_two_files(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    header = ",".join(CSV_HEADER)
    a.write_text(f"{header}\n2d,8,0.0,0.08,weighted,100,10,0.1,0,1,1\n2d,8,0.0,0.12,weighted,100,30,0.3,0,1,1\n")
    b.write_text(f"{header}\n2d,16,0.0,0.08,weighted,100,5,0.05,0,1,1\n2d,16,0.0,0.12,weighted,100,40,0.4,0,1,1\n")
    assert main(["crossing", str(a), str(b)]) == 0
    assert capsys.readouterr().out.startswith("0.093333")


def test_crossing_without_sign_change(tmp_path, capsys):
    a = tmp_path / "a.csv"
    header = ",".join(CSV_HEADER)
    a.write_text(f"{header}\n2d,8,0.0,0.08,weighted,100,10,0.1,0,1,1\n2d,8,0.0,0.12,weighted,100,30,0.3,0,1,1\n"
                 f"2d,16,0.0,0.08,weighted,100,20,0.2,0,1,1\n2d,16,0.0,0.12,weighted,100,40,0.4,0,1,1\n")
    assert main(["crossing", str(a)]) == 1


def test_ackermann(capsys):
    assert main(["ackermann", "2^16", "2^17", "2^65537"]) == 0
    assert [line.split("\t")[1] for line in capsys.readouterr().out.splitlines()] == ["1", "2", "3"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ufdecoder", "ackermann", "300"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "300\t1"
