"""Command-line behavior: exit codes, files, determinism, CSV shape."""

import csv
import json
from pathlib import Path

import pytest

from spdtw import cli, io

TOY = """cli-toy

VEHICLE
NUMBER     CAPACITY
   4          100

CUSTOMER
CUST NO.  XCOORD.  YCOORD.  DDEMAND  PDEMAND  READY TIME  DUE DATE  SERVICE TIME

0   50   50   0   0   0   2000   0
1   55   55   10   5   10   1500   5
2   45   60   15   5   10   1500   5
3   60   40   10   10   10   1500   5
4   40   42   5   15   10   1500   5
5   52   38   10   5   10   1500   5
"""


@pytest.fixture
def toy_path(tmp_path):
    p = tmp_path / "toy.txt"
    p.write_text(TOY)
    return p


def solve_args(toy_path, out, extra=()):
    return ["solve", "--instance", str(toy_path), "--format", "wc",
            "--seed", "7", "--pop", "4", "--gmax", "3",
            "--out", str(out), *extra]


def test_solve_writes_file_and_summary(toy_path, tmp_path, capsys):
    out = tmp_path / "sol.txt"
    code = cli.main(solve_args(toy_path, out))
    assert code == 0
    captured = capsys.readouterr()
    fields = captured.out.strip().split()
    assert fields[0] == "cli-toy"
    assert fields[-1] == "7"                  # seed echoed last
    assert len(fields) == 7
    sf = io.read_solution(out.read_text())
    assert sf.instance == "cli-toy"
    assert sf.seed == 7
    assert float(fields[2]) == pytest.approx(sf.td, abs=0.01)


def test_solve_json_report(toy_path, tmp_path, capsys):
    out = tmp_path / "sol.txt"
    code = cli.main(solve_args(toy_path, out, ("--json",)))
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["instance"] == "cli-toy"
    assert set(doc) == {"instance", "nv", "td", "tc", "generations",
                        "seconds", "seed"}


def test_solve_deterministic_output(toy_path, tmp_path, capsys):
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    assert cli.main(solve_args(toy_path, out1)) == 0
    first = capsys.readouterr().out.split()
    assert cli.main(solve_args(toy_path, out2)) == 0
    second = capsys.readouterr().out.split()
    assert out1.read_bytes() == out2.read_bytes()
    # summaries match except the wall-clock column
    assert first[:5] == second[:5] and first[6] == second[6]


def test_solve_rejects_non_square_population(toy_path, tmp_path, capsys):
    code = cli.main(["solve", "--instance", str(toy_path), "--pop", "15"])
    assert code == 1
    assert "square" in capsys.readouterr().err


def test_solve_missing_file(tmp_path, capsys):
    code = cli.main(["solve", "--instance", str(tmp_path / "nope.txt")])
    assert code == 1


INFEASIBLE = """needs-two-vehicles

VEHICLE
NUMBER     CAPACITY
   1          20

CUSTOMER
CUST NO.  XCOORD.  YCOORD.  DDEMAND  PDEMAND  READY TIME  DUE DATE  SERVICE TIME

0   50   50   0   0   0   2000   0
1   55   55   20   0   10   1500   5
2   45   60   20   0   10   1500   5
"""


def test_solve_exit_2_when_construction_infeasible(tmp_path, capsys):
    p = tmp_path / "infeasible.txt"
    p.write_text(INFEASIBLE)
    code = cli.main(["solve", "--instance", str(p), "--pop", "4",
                     "--gmax", "2"])
    assert code == 2
    assert "infeasible" in capsys.readouterr().err


def test_verify_round_trip_and_tampering(toy_path, tmp_path, capsys):
    out = tmp_path / "sol.txt"
    assert cli.main(solve_args(toy_path, out)) == 0
    capsys.readouterr()

    ok = cli.main(["verify", "--instance", str(toy_path), "--solution",
                   str(out)])
    assert ok == 0
    assert "verified" in capsys.readouterr().out

    text = out.read_text()
    td_line = next(l for l in text.splitlines() if l.startswith("TD:"))
    tampered = tmp_path / "bad.txt"
    tampered.write_text(text.replace(td_line, "TD: 9999.99"))
    code = cli.main(["verify", "--instance", str(toy_path), "--solution",
                     str(tampered)])
    assert code == 3
    assert "TD mismatch" in capsys.readouterr().err

    unknown = tmp_path / "unknown.txt"
    unknown.write_text(text.replace("route 1: ", "route 1: 999 "))
    code = cli.main(["verify", "--instance", str(toy_path), "--solution",
                     str(unknown)])
    assert code == 3
    assert "unknown" in capsys.readouterr().err.lower()


def test_verify_detects_infeasible_solution(toy_path, tmp_path, capsys):
    inst = io.parse_wc(TOY)
    from spdtw.model import Solution
    sf = io.write_solution(inst, Solution([(0, 1, 2, 3, 4, 0)]))  # 5 missing
    bad = tmp_path / "incomplete.txt"
    bad.write_text(io.solution_to_text(sf))
    code = cli.main(["verify", "--instance", str(toy_path), "--solution",
                     str(bad)])
    assert code == 3
    assert "not served" in capsys.readouterr().err


def test_bench_csv_shape(toy_path, tmp_path, capsys):
    suite = tmp_path / "suite"
    suite.mkdir()
    (suite / "a.txt").write_text(TOY.replace("cli-toy", "inst-a"))
    (suite / "b.txt").write_text(TOY.replace("cli-toy", "inst-b"))
    csv_path = tmp_path / "bench.csv"
    code = cli.main(["bench", "--suite", str(suite), "--runs", "2",
                     "--seed-base", "3", "--pop", "4", "--gmax", "2",
                     "--csv", str(csv_path)])
    assert code == 0
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    # 2 instances x (2 runs + mean/std/best)
    assert len(rows) == 2 * (2 + 3)
    run_rows = [r for r in rows if r["seed"].isdigit()]
    assert sorted(r["seed"] for r in run_rows) == ["3", "3", "4", "4"]
    for name in ("inst-a", "inst-b"):
        per = [r for r in run_rows if r["instance"] == name]
        mean = next(r for r in rows
                    if r["instance"] == name and r["seed"] == "mean")
        best = next(r for r in rows
                    if r["instance"] == name and r["seed"] == "best")
        tds = [float(r["TD"]) for r in per]
        tcs = [float(r["TC"]) for r in per]
        assert float(mean["TD"]) == pytest.approx(sum(tds) / len(tds),
                                                  abs=0.005)
        assert float(best["TC"]) == pytest.approx(min(tcs), abs=1e-9)


def test_bench_rejects_missing_suite(tmp_path, capsys):
    code = cli.main(["bench", "--suite", str(tmp_path / "missing")])
    assert code == 1


def test_bench_records_partial_failures(toy_path, tmp_path, capsys):
    suite = tmp_path / "suite"
    suite.mkdir()
    (suite / "good.txt").write_text(TOY.replace("cli-toy", "good"))
    (suite / "bad.txt").write_text(INFEASIBLE)
    csv_path = tmp_path / "bench.csv"
    code = cli.main(["bench", "--suite", str(suite), "--runs", "1",
                     "--pop", "4", "--gmax", "2", "--csv", str(csv_path)])
    assert code == 1                      # not all runs completed
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    failed = [r for r in rows if r["instance"] == "needs-two-vehicles"]
    assert failed and failed[0]["NV"] == ""
    good = [r for r in rows if r["instance"] == "good" and r["seed"] == "0"]
    assert good and good[0]["NV"] != ""


def test_bench_seed_stability_on_shipped_instance(tmp_path):
    # every seed converges to the same figures on the 10-customer instance,
    # so the std summary row is exactly zero
    root = Path(__file__).resolve().parent.parent
    suite = tmp_path / "suite"
    suite.mkdir()
    (suite / "rcdp1001.txt").write_text(
        (root / "data" / "wc" / "rcdp1001.txt").read_text())
    csv_path = tmp_path / "bench.csv"
    code = cli.main(["bench", "--suite", str(suite), "--runs", "3",
                     "--seed-base", "0", "--csv", str(csv_path)])
    assert code == 0
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    std = next(r for r in rows if r["seed"] == "std")
    assert std["TD"] == "0.00"
    assert std["NV"] == "0.00"


def test_verify_frozen_golden_solution(capsys):
    # the frozen optimum of the shipped 10-customer instance verifies clean
    root = Path(__file__).resolve().parent.parent
    code = cli.main([
        "verify",
        "--instance", str(root / "data" / "wc" / "rcdp1001.txt"),
        "--solution", str(root / "tests" / "data" / "rcdp1001_golden.txt"),
    ])
    assert code == 0
    assert "verified" in capsys.readouterr().out
