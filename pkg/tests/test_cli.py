"""End-to-end tests for the command-line interface."""

import csv
import io
import json
import math

import pytest

from tribell import cli, make_w


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reproduce_passes_and_exits_zero(capsys):
    code, out, _ = run_cli(capsys, "reproduce")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") == 8
    assert "8/8 checks passed" in out


def test_reproduce_json_round_trips(capsys):
    code, out, _ = run_cli(capsys, "reproduce", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert len(payload["rows"]) == 8
    assert cli.render_json(payload) == out


def test_reproduce_csv(capsys):
    code, out, _ = run_cli(capsys, "reproduce", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["id", "label", "value", "expected", "tolerance", "passed"]
    assert len(rows) == 9
    assert all(row[-1] == "True" for row in rows[1:])


def test_reproduce_writes_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "reproduce", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["all_passed"] is True


def test_optimize_w_svetlichny_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "optimize", "--state", "w", "--functional", "svetlichny",
        "--grid-step", "30", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["best_value"] == pytest.approx(4.354, abs=1e-3)
    assert payload["report"]["classification"] == "rules_out_hybrid"
    assert len(payload["settings_degrees"]) == 3
    assert cli.render_json(payload) == out


def test_optimize_trace_csv(capsys, tmp_path):
    trace_path = tmp_path / "trace.csv"
    code, _, _ = run_cli(
        capsys,
        "optimize", "--state", "ghz-rl", "--functional", "svetlichny",
        "--grid-step", "30", "--trace-csv", str(trace_path),
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(trace_path.read_text())))
    assert rows[0] == ["iteration", "value"]
    assert len(rows) >= 2


def test_lhv_scan_values(capsys):
    code, out, _ = run_cli(
        capsys, "lhv-scan", "--functional", "mermin", "--model", "local",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["max_value"] == 2.0
    code, out, _ = run_cli(
        capsys, "lhv-scan", "--functional", "svetlichny", "--model", "hybrid",
        "--format", "json",
    )
    assert json.loads(out)["max_value"] == 4.0
    assert code == 0


def test_sample_json_reports(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--state", "w", "--pairs", "90,0", "--shots", "4000",
        "--seed", "3", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n_shots_per_setting"] == 4000
    assert set(payload["reports"]) == {"mermin", "svetlichny"}
    assert payload["tensor"]["111"] == -1.0
    assert payload["reports"]["svetlichny"]["value"] == pytest.approx(3.0, abs=0.2)


def test_sample_csv_counts(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--state", "w", "--pairs", "90,0", "--shots", "100",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["i", "j", "k", "outcome", "count"]
    assert len(rows) == 65


def test_sample_rejects_zero_shots(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["sample", "--state", "w", "--pairs", "90,0", "--shots", "0"])
    assert excinfo.value.code == 2


def test_correlations_single_angles(capsys):
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", "w", "--angles", "90,90,0", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["correlation"] == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert payload["distribution"]["+++"] == pytest.approx(1.0 / 3.0, abs=1e-9)


def test_correlations_pairs_tensor(capsys):
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", "w", "--pairs", "90,0", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["tensor"]["111"] == pytest.approx(-1.0, abs=1e-9)
    assert payload["reports"]["svetlichny"]["value"] == pytest.approx(3.0, abs=1e-9)
    assert payload["reports"]["svetlichny"]["classification"] == "consistent_with_local"


def test_correlations_radians_flag(capsys):
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", "w", "--pairs",
        f"{math.pi / 2},0", "--radians", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["reports"]["svetlichny"]["value"] == pytest.approx(3.0, abs=1e-9)


def test_correlations_degenerate_pairs_flagged(capsys):
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", "w", "--pairs", "10,10", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["reports"]["mermin"]["degenerate"] is True


def test_correlations_visibility(capsys):
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", "w", "--visibility", "0.5",
        "--pairs", "35.264,144.736", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["reports"]["svetlichny"]["value"] == pytest.approx(
        0.5 * 4.354648431463461, abs=1e-9
    )


def test_state_file_round_trip(capsys, tmp_path):
    state_path = tmp_path / "w.json"
    state_path.write_text(json.dumps(make_w().to_jsonable()))
    code, out, _ = run_cli(
        capsys,
        "correlations", "--state", str(state_path), "--angles", "0,0,0",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["correlation"] == pytest.approx(-1.0, abs=1e-9)


def test_unknown_state_is_reported_machine_readably(capsys):
    code, out, err = run_cli(capsys, "correlations", "--state", "nope", "--angles", "0")
    assert code == 2
    assert out == ""
    assert "unknown state" in json.loads(err)["error"]


def test_bad_visibility_rejected(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["correlations", "--state", "w", "--visibility", "1.5", "--angles", "0"])
    assert excinfo.value.code == 2


def test_missing_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2
