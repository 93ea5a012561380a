import csv
import io
import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src" / "services" / "cyclotomic"))

import common.coeffs as coeffs
import common.verification as verification
from common.models import SweepRow
from service import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main

SWEEP_HEADER = (
    "p,q,r,deg,alpha,beta,beta_star,a_plus,a_minus,a,max_jump,bound_new,bound_bachman,"
    "bound_beiter,bound_bang,tight_flag,corollary_s_guarantee,elapsed_ms"
)


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv("CYCLO_WORKERS", "1")
    monkeypatch.delenv("CYCLO_FORMAT", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_compute_both_methods(capsys):
    code, out = run(capsys, "compute", "3", "5", "7", "--method", "both")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "n,coefficient"
    assert len(lines) == 50
    assert lines[8] == "7,-2"
    assert "\r" not in out


def test_compute_single_index(capsys):
    code, out = run(capsys, "compute", "3", "5", "7", "--method", "fk", "--at", "7")
    assert code == EXIT_OK
    assert out == "n,coefficient\n7,-2\n"


def test_compute_json(capsys):
    code, out = run(capsys, "compute", "7", "5", "3", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["coefficients"][:10] == [1, 1, 1, 0, 0, -1, -1, -2, -1, -1]
    assert len(payload["coefficients"]) == 49
    summary = payload["summary"]
    assert (summary["height"], summary["max_jump"], summary["bound_new"]) == (2, 1, 2)
    assert summary["tight"] is True


def test_compute_with_tiny_blocks(capsys, monkeypatch):
    monkeypatch.setenv("CYCLO_CHUNK_SIZE", "2")
    code, out = run(capsys, "compute", "5", "7", "11", "--method", "both")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 242


def test_compute_rejects_composite(capsys):
    assert main(["compute", "4", "5", "7"]) == EXIT_INPUT_ERROR
    assert "not prime" in capsys.readouterr().err


def test_compute_index_out_of_range():
    assert main(["compute", "3", "5", "7", "--at", "49"]) == EXIT_INPUT_ERROR


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["compute", "3", "5"])
    assert excinfo.value.code == 2


def test_verify_exhaustive(capsys):
    code, out = run(capsys, "verify", "3", "5", "7", "--exhaustive")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["check"] for row in rows] == list(verification.CHECK_NAMES)
    assert all(row["failed"] == "0" and row["first_counterexample"] == "" for row in rows)


def test_verify_sweep(capsys):
    code, out = run(capsys, "verify", "--sweep", "--pqr-max", "3000", "--samples", "30", "--seed", "7")
    assert code == EXIT_OK
    again = run(capsys, "verify", "--sweep", "--pqr-max", "3000", "--samples", "30", "--seed", "7")
    assert again == (code, out)


def test_verify_catches_shifted_window(capsys, monkeypatch):
    original = verification.fk_range
    monkeypatch.setattr(verification, "fk_range", lambda ctx, lo, hi: np.roll(original(ctx, lo, hi), 1))
    code, out = run(capsys, "verify", "5", "7", "11", "--exhaustive")
    assert code == EXIT_VERIFICATION_FAILED
    rows = {row["check"]: row for row in csv.DictReader(io.StringIO(out))}
    assert rows["diff_q"]["failed"] != "0"
    assert "(5,7,11)" in rows["diff_q"]["first_counterexample"]


def test_verify_catches_shifted_coefficient_window(capsys, monkeypatch):
    original = coeffs.fk_range
    monkeypatch.setattr(coeffs, "fk_range", lambda ctx, lo, hi: original(ctx, lo - 1, hi - 1))
    code, out = run(capsys, "verify", "3", "5", "7")
    assert code == EXIT_VERIFICATION_FAILED
    rows = {row["check"]: row for row in csv.DictReader(io.StringIO(out))}
    assert rows["oracle_equivalence"]["failed"] == "1"
    assert rows["fk_values"]["failed"] == "0"


def test_compute_both_catches_shifted_coefficient_window(monkeypatch):
    original = coeffs.fk_range
    monkeypatch.setattr(coeffs, "fk_range", lambda ctx, lo, hi: original(ctx, lo - 1, hi - 1))
    assert main(["compute", "3", "5", "7", "--method", "both"]) == EXIT_VERIFICATION_FAILED


def test_sweep_smallest(capsys):
    code, out = run(capsys, "sweep", "--pqr-max", "105")
    assert code == EXIT_OK
    assert out.splitlines() == [SWEEP_HEADER, "3,5,7,48,1,2,1,1,-2,2,1,2,2,3,2,true,,"]


def test_sweep_file_output_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.csv", tmp_path / "nested" / "b.csv"
    assert main(["sweep", "--pqr-max", "1500", "--out", str(first)]) == EXIT_OK
    assert main(["sweep", "--pqr-max", "1500", "--out", str(second), "--workers", "2"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 77
    assert capsys.readouterr().out == ""
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.csv", "nested"]


def test_sweep_json(capsys):
    code, out = run(capsys, "sweep", "--pqr-max", "400", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)
    assert [(row["p"], row["q"], row["r"]) for row in rows] == [(3, 5, 7), (3, 5, 11), (3, 5, 13), (3, 5, 17), (3, 5, 19), (3, 5, 23), (3, 7, 11), (3, 7, 13), (3, 7, 17), (3, 7, 19), (5, 7, 11)]
    assert list(rows[0]) == SWEEP_HEADER.split(",")
    assert rows[0]["elapsed_ms"] is None
    first = SweepRow.from_dict(rows[0])
    assert (first.a, first.bound_new, first.tight_flag) == (2, 2, True)


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--pqr-max", str(1 << 40)],
        ["verify", "--sweep", "--pqr-max", "2000000000"],
        ["bench", "--pqr-max", "2000000000"],
    ],
)
def test_oversized_sweeps_are_input_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT_ERROR
    assert "sweep limit" in capsys.readouterr().err


def test_grid_7(capsys):
    code, out = run(capsys, "grid", "7")
    assert code == EXIT_OK
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert (row["stronger_count"], row["stronger_expected"], row["pairs"]) == ("4", "4", "36")
    assert row["c"] == ""


def test_grid_density(capsys, tmp_path):
    full = tmp_path / "grid.csv"
    code, out = run(capsys, "grid", "199", "--c", "2/3", "--c", "1/2", "--full-grid", str(full), "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)
    assert [row["c"] for row in rows] == ["2/3", "1/2"]
    assert rows[0]["closed_form_lower"] == "25/27"
    assert abs(rows[0]["empirical_fraction_float"] - 25 / 27) < 0.05
    assert len(full.read_text().splitlines()) == 198 * 198 + 1


def test_grid_rejects_composite():
    assert main(["grid", "9"]) == EXIT_INPUT_ERROR


def test_grid_rejects_float_threshold():
    with pytest.raises(SystemExit):
        main(["grid", "7", "--c", "two thirds"])


def test_bench_small(capsys):
    code, out = run(capsys, "bench", "3", "5", "7", "--point-queries", "10")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["method"] for row in rows] == ["oracle", "fk_window", "fk_point"]
    assert rows[0]["coefficients"] == "49"
    assert rows[2]["coefficients"] == "10"
