import csv
import io
import subprocess
import sys
from decimal import Decimal

import pytest

from lrrtq.cli import main
from lrrtq.formats import default_fis_text


@pytest.fixture
def case1(tmp_path):
    p = tmp_path / "case1.csv"
    p.write_text("pid,arrival,burst\nP1,0,8\nP2,0,5\nP3,0,4\nP4,0,7\n")
    return str(p)


@pytest.fixture
def case2(tmp_path):
    p = tmp_path / "case2.csv"
    p.write_bytes(b"pid,arrival,burst\r\nP1,0,8\r\nP2,0,10\r\nP3,0,6\r\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def sections(text):
    """Split the multi-section simulate CSV into {name: rows}."""
    found, name = {}, None
    for block in text.split("\n\n"):
        lines = [l for l in block.splitlines() if not l.startswith("# note")]
        name = lines[0].lstrip("# ")
        found[name] = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    return found


def test_infer_paper_points(capsys, tmp_path):
    code, out, _ = run(capsys, "infer", "--nop", "4", "--abt", "6")
    assert code == 0 and abs(float(out) - 2.61) <= 0.05
    assert len(out.strip().split(".")[1]) == 4
    _, out38, _ = run(capsys, "infer", "--nop", "3", "--abt", "8")
    assert abs(float(out38) - 3.06) <= 0.05
    fis = tmp_path / "lrrtq.fis"
    fis.write_text(default_fis_text())
    assert run(capsys, "infer", "--nop", "4", "--abt", "6", "--fis", str(fis))[1] == out


def test_infer_bad_fis(capsys, tmp_path):
    bad = tmp_path / "bad.fis"
    bad.write_text("input x 0 1\nterm a 1 0 0 0\n")
    code, out, err = run(capsys, "infer", "--nop", "4", "--abt", "6", "--fis", str(bad))
    assert code == 1 and out == ""
    assert len(err.strip().splitlines()) == 1 and "bad.fis:2" in err


def test_simulate_fuzzy_case1(capsys, case1):
    code, out, _ = run(capsys, "simulate", "--workload", case1, "--policy", "fuzzy")
    assert code == 0
    assert "Average waiting time:     11.8208" in out
    assert "Average turnaround time:  17.8208" in out
    assert "reproduced" in out


def test_simulate_fixed_case2_csv(capsys, case2):
    code, out, _ = run(capsys, "simulate", "--workload", case2, "--policy", "fixed", "--quantum", "2.6", "--format", "csv")
    assert code == 0
    s = sections(out)
    summary = {r["metric"]: r["value"] for r in s["summary"]}
    assert Decimal(summary["avg_waiting"]).quantize(Decimal("0.1")) == Decimal("14.5")
    assert Decimal(summary["avg_turnaround"]).quantize(Decimal("0.1")) == Decimal("22.5")
    for row in s["processes"]:
        assert Decimal(row["waiting"]) == Decimal(row["turnaround"]) - Decimal(row["burst"])
    assert len(s["trace"]) == int(summary["dispatch_count"]) == 11


def test_simulate_single_process(capsys, tmp_path):
    p = tmp_path / "one.csv"
    p.write_text("pid,arrival,burst\nA,0,3\n")
    code, out, _ = run(capsys, "simulate", "--workload", str(p), "--policy", "fixed", "--quantum", "1", "--format", "csv")
    assert code == 0
    assert sections(out)["processes"][0]["waiting"] == "0.0000"


def test_simulate_fixed_needs_quantum(capsys, case1):
    code, _, err = run(capsys, "simulate", "--workload", case1, "--policy", "fixed")
    assert code == 1 and "--quantum" in err


def test_simulate_bad_workload(capsys, tmp_path):
    p = tmp_path / "w.csv"
    p.write_text("pid,arrival,burst\nP1,0,0\n")
    code, _, err = run(capsys, "simulate", "--workload", str(p), "--policy", "fuzzy")
    assert code == 1 and "w.csv:2" in err and "non-positive burst" in err
    code, _, err = run(capsys, "simulate", "--workload", str(tmp_path / "missing.csv"), "--policy", "fuzzy")
    assert code == 1 and "missing.csv" in err


def test_compare_case1(capsys, case1):
    code, out, _ = run(capsys, "compare", "--workload", case1, "--quantum", "2.6", "--format", "csv")
    assert code == 0
    rows = {r[0]: r[1:] for r in csv.reader(l for l in out.splitlines() if not l.startswith("#"))}
    assert rows["avg_waiting"] == ["14.0000", "11.8208"]
    assert rows["avg_turnaround"] == ["20.0000", "17.8208"]
    assert "15.3 NOT reproduced" in out


def test_compare_case2_table(capsys, case2):
    code, out, _ = run(capsys, "compare", "--workload", case2, "--quantum", "3.06")
    assert code == 0
    assert "12.7867" in out and "10.7348" in out
    assert "Inferred quantum: 3.0511" in out
    assert "inconsistent" in out


def test_compare_single_process(capsys, tmp_path):
    p = tmp_path / "one.csv"
    p.write_text("pid,arrival,burst\nA,0,2\n")
    code, out, _ = run(capsys, "compare", "--workload", str(p), "--quantum", "1", "--format", "csv")
    rows = {r[0]: r[1:] for r in csv.reader(l for l in out.splitlines() if not l.startswith("#"))}
    assert rows["avg_waiting"][0] == rows["avg_waiting"][1]
    assert rows["avg_turnaround"][0] == rows["avg_turnaround"][1]


def test_surface(capsys, tmp_path):
    out_path = tmp_path / "surface.csv"
    code, _, _ = run(capsys, "surface", "--nop-steps", "10", "--abt-steps", "12", "--out", str(out_path))
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert len(rows) == 11 and all(len(r) == 13 for r in rows)
    cells = [float(c) for r in rows[1:] for c in r[1:]]
    assert all(1 <= c <= 5 for c in cells)
    # axes are the integers, so (4, 6) and (3, 8) are exact grid points
    _, infer_out, _ = run(capsys, "infer", "--nop", "4", "--abt", "6")
    assert rows[4][6] == infer_out.strip()
    assert abs(float(rows[3][8]) - 3.06) <= 0.05


def test_surface_failure_leaves_no_file(capsys, tmp_path):
    target = tmp_path / "nope" / "s.csv"
    code, _, err = run(capsys, "surface", "--nop-steps", "3", "--abt-steps", "3", "--out", str(target))
    assert code == 1 and "cannot write" in err
    code, _, _ = run(capsys, "surface", "--nop-steps", "1", "--abt-steps", "3", "--out", str(tmp_path / "s.csv"))
    assert code == 1 and list(tmp_path.iterdir()) == []


def test_module_entry_point(case1):
    proc = subprocess.run([sys.executable, "-m", "lrrtq", "infer", "--nop", "4", "--abt", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2.6119"
