import json

import pytest

import main as cli
from core.enums import SUITE_CHECKS


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["eval", "kappa2q", "--x", "0", "--eps", "0.1", "--q", "2"], "1.64"),
        (["eval", "C", "--x", "1"], "2"),
        (["eval", "H", "--x", "0.5"], "1"),
        (["eval", "eps_threshold", "--q", "2"], "0"),
    ],
)
def test_eval_prints_the_value(capsys, argv, expected):
    assert cli.main(argv) == 0
    assert capsys.readouterr().out.strip() == expected


def test_eval_outside_the_domain_exits_with_input_error(capsys):
    assert cli.main(["eval", "phi", "--x", "0.5", "--eps", "0.7"]) == 2
    assert "[cube-bounds][error]" in capsys.readouterr().err


def test_eval_reports_missing_flags(capsys):
    assert cli.main(["eval", "psi2q", "--x", "0.5"]) == 2
    assert "--eps, --q" in capsys.readouterr().err


def test_check_inline_generator(capsys):
    code = cli.main(["check", '{"kind": "mixture", "n": 6, "r": 2, "v": 3.0}', "--which", "nhc"])
    captured = capsys.readouterr()
    records = _json_lines(captured.out)
    assert code == 0
    assert [rec["name"] for rec in records] == ["nhc"]
    assert records[0]["pass"] is True
    assert "1/1 passed" in captured.err


def test_check_file_input_runs_every_check(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"n": 2, "values": [1.0, 2.0, 0.5, 4.0]}), encoding="utf-8")
    assert cli.main(["check", str(path), "--eps", "0.2", "--q", "3"]) == 0
    names = [rec["name"] for rec in _json_lines(capsys.readouterr().out)]
    assert names == ["hc_baseline", "mgl", "mgl_linear", "renyi2_mgl", "nhc", "log_sobolev", "bounded_support"]


def test_check_csv_output_and_semigroup(capsys):
    code = cli.main(
        ["check", '{"kind": "ball", "n": 5, "r": 2}', "--which", "semigroup,mgl", "--eps2", "0.3", "--format", "csv"]
    )
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0] == "name,n,eps,q,lhs,rhs,slack,pass"
    assert [line.split(",")[0] for line in lines[1:]] == ["semigroup", "mgl"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", '{"n": 2, "values": [1.0, 2.0'],
        ["check", '{"n": 2, "values": [1.0, 2.0, 3.0]}'],
        ["check", '{"kind": "ball", "n": 4, "r": 1}', "--which", "semigroup"],
        ["check", '{"kind": "ball", "n": 4, "r": 1}', "--which", "bogus"],
    ],
)
def test_check_input_errors_exit_with_two(capsys, argv):
    assert cli.main(argv) == 2
    assert capsys.readouterr().out == ""


def test_check_missing_file(tmp_path, capsys):
    assert cli.main(["check", str(tmp_path / "missing.json")]) == 2
    assert "Cannot read" in capsys.readouterr().err


def test_sweep_with_empty_range_writes_only_the_header(capsys):
    assert cli.main(["sweep", "H", "--x-range", "0", "1", "0"]) == 0
    assert capsys.readouterr().out.splitlines() == ["fn,x,eps,q,value"]


def test_sweep_rows_in_x_then_eps_order(tmp_path):
    out = tmp_path / "phi.csv"
    assert cli.main(["sweep", "phi", "--x", "0.2", "0.8", "--eps", "0.1", "0.3", "--out", str(out)]) == 0
    rows = out.read_text(encoding="utf-8").splitlines()[1:]
    assert [tuple(row.split(",")[1:3]) for row in rows] == [
        ("0.2", "0.1"),
        ("0.2", "0.3"),
        ("0.8", "0.1"),
        ("0.8", "0.3"),
    ]


def test_sweep_unwritable_output_exits_with_two(tmp_path, capsys):
    blocker = tmp_path / "file.txt"
    blocker.write_text("", encoding="utf-8")
    assert cli.main(["sweep", "H", "--x", "0.5", "--out", str(blocker / "out.csv")]) == 2
    assert "Cannot write" in capsys.readouterr().err


def test_eigen_reports_every_radius(capsys):
    assert cli.main(["eigen", "--n", "5"]) == 0
    records = _json_lines(capsys.readouterr().out)
    assert len(records) == 10
    assert all(rec["pass"] for rec in records)


def test_eigen_rejects_bad_radius(capsys):
    assert cli.main(["eigen", "--n", "4", "--r", "4"]) == 2


def test_tightness_explicit_mode(capsys):
    assert cli.main(["tightness", "--mode", "explicit", "--n", "10", "12"]) == 0
    captured = capsys.readouterr()
    records = _json_lines(captured.out)
    assert [(rec["kind"], rec["n"]) for rec in records] == [("renyi2", 10), ("renyi2", 12), ("nhc", 10), ("nhc", 12)]
    assert "decreasing=" in captured.err


def test_tightness_writes_trend_csv(tmp_path):
    out = tmp_path / "trend.csv"
    assert cli.main(["tightness", "--kind", "nhc", "--n", "50", "100", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "kind,n,slack,achieved,target,entropy_rate"
    assert [line.split(",")[:2] for line in lines[1:]] == [["nhc", "50"], ["nhc", "100"]]


def test_suite_from_config_file(tmp_path, capsys):
    config = tmp_path / "suite.json"
    config.write_text(
        json.dumps({"seed": 3, "n_range": [2, 3], "eps_grid": [0.1], "q_grid": [2.0], "samples_per_cell": 2, "trend": None}),
        encoding="utf-8",
    )
    out = tmp_path / "report.json"
    assert cli.main(["suite", "--config", str(config), "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["config"]["seed"] == 3
    assert report["config"]["n_range"] == [2, 3]
    assert "[cube-bounds][suite] passed" in capsys.readouterr().err


def test_suite_writes_witness_csv(tmp_path, capsys):
    config = tmp_path / "suite.json"
    config.write_text(
        json.dumps({"seed": 5, "n_range": [3], "eps_grid": [0.1], "q_grid": [2.0], "samples_per_cell": 2, "trend": None}),
        encoding="utf-8",
    )
    witness_csv = tmp_path / "out" / "witnesses.csv"
    assert cli.main(["suite", "--config", str(config), "--out", str(tmp_path / "r.json"), "--witness-out", str(witness_csv)]) == 0
    lines = witness_csv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "name,n,eps,q,lhs,rhs,slack,pass"
    assert [line.split(",")[0] for line in lines[1:]] == sorted(check.value for check in SUITE_CHECKS)
    assert "- mgl_boundary: holds=True" in capsys.readouterr().err


def test_suite_rejects_invalid_config(tmp_path, capsys):
    config = tmp_path / "suite.json"
    config.write_text(json.dumps({"seed": 3, "samples_per_cell": 0}), encoding="utf-8")
    assert cli.main(["suite", "--config", str(config)]) == 2
    assert "$.samples_per_cell" in capsys.readouterr().err


def test_log_flag_writes_run_event_and_check_files(log_dirs, capsys):
    assert cli.main(["--log", "check", '{"kind": "sphere", "n": 4, "r": 1}', "--which", "nhc,bounded_support"]) == 0

    runs = list(log_dirs["runs"].glob("*.json"))
    assert len(runs) == 1
    run = json.loads(runs[0].read_text(encoding="utf-8"))
    assert run["command"] == "check"
    assert run["outcome"] == "passed"
    assert run["summary_stats"]["checks_logged"] == 2
    assert run["summary_stats"]["checks"]["nhc"]["failed"] == 0

    events = _json_lines(next(log_dirs["events"].glob("*.jsonl")).read_text(encoding="utf-8"))
    types = [event["type"] for event in events]
    assert types[0] == "run_started"
    assert types[-1] == "run_finished"
    assert types.count("check_evaluated") == 2

    checks = _json_lines(next(log_dirs["runs"].glob("*_checks.jsonl")).read_text(encoding="utf-8"))
    assert [rec["name"] for rec in checks] == ["nhc", "bounded_support"]


def test_log_flag_records_errors(log_dirs, capsys):
    assert cli.main(["--log", "eval", "phi", "--x", "2", "--eps", "0.1"]) == 2

    run = json.loads(next(log_dirs["runs"].glob("*.json")).read_text(encoding="utf-8"))
    assert run["outcome"] == "error"
    errors = _json_lines((log_dirs["errors"] / "errors.jsonl").read_text(encoding="utf-8"))
    assert errors[0]["context"]["command"] == "eval"
