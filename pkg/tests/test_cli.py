from __future__ import annotations

import json

import pytest

from corpus import group_a_corpus
from tvusability.cli import main
from tvusability.logs import save_logs


@pytest.fixture()
def fixture_files(tmp_path):
    """Materialize bundled fixture documents the way a CLI user would."""
    app = tmp_path / "cinemup.json"
    scenarios = tmp_path / "scenarios.json"
    model = tmp_path / "model.json"
    assert main(["fixture", "cinemup-app", "--out", str(app)]) == 0
    assert main(["fixture", "cinemup-scenarios", "--out", str(scenarios)]) == 0
    assert main(["crawl", "--app", str(app), "--out", str(model)]) == 0
    return {"app": app, "scenarios": scenarios, "model": model, "dir": tmp_path}


def test_crawl_writes_model_and_stats(fixture_files, capsys):
    capsys.readouterr()
    again = fixture_files["dir"] / "again.json"
    assert main(["crawl", "--app", str(fixture_files["app"]), "--out", str(again)]) == 0
    assert "nodes=99" in capsys.readouterr().out
    doc = json.loads(again.read_text())
    assert doc["start"] == "home/popular"
    assert again.read_bytes() == fixture_files["model"].read_bytes()


def test_verify_exit_zero_under_adjusted_defaults(fixture_files, capsys):
    code = main(
        ["verify", "--model", str(fixture_files["model"]), "--scenarios", str(fixture_files["scenarios"])]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "85275" in out


def test_verify_exit_one_under_initial_thresholds(fixture_files):
    code = main(
        [
            "verify",
            "--model", str(fixture_files["model"]),
            "--scenarios", str(fixture_files["scenarios"]),
            "--context", "initial",
            "--thresholds", "initial",
        ]
    )
    assert code == 1


def test_verify_report_is_byte_deterministic(fixture_files):
    first = fixture_files["dir"] / "r1.json"
    second = fixture_files["dir"] / "r2.json"
    for path in (first, second):
        code = main(
            [
                "verify",
                "--model", str(fixture_files["model"]),
                "--scenarios", str(fixture_files["scenarios"]),
                "--report-json", str(path),
                "--no-timestamp",
            ]
        )
        assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify_with_custom_csv_context(fixture_files):
    delta = fixture_files["dir"] / "delta.csv"
    factors = fixture_files["dir"] / "factors.csv"
    delta.write_text(
        "action,delta_ms,uc\nLEFT,800,1\nRIGHT,800,1\nUP,800,1\nDOWN,800,1\nOK,2500,1\nBACK,1500,1\n"
    )
    factors.write_text("factor,value\ndevice,1.0\nenvironment,1.0\n")
    report = fixture_files["dir"] / "report.json"
    code = main(
        [
            "verify",
            "--model", str(fixture_files["model"]),
            "--scenarios", str(fixture_files["scenarios"]),
            "--delta-csv", str(delta),
            "--factors-csv", str(factors),
            "--report-json", str(report),
            "--no-timestamp",
        ]
    )
    assert code == 0
    doc = json.loads(report.read_text())
    assert [r["resolved"]["effort_ms"] for r in doc["reports"]] == [20100, 7300, 97000]


def test_crawl_budget_zero_is_usage_error(fixture_files, capsys):
    code = main(["crawl", "--app", str(fixture_files["app"]), "--budget", "0", "--out", "/dev/null"])
    assert code == 2
    assert "budget" in capsys.readouterr().err


def test_verify_unknown_waypoint_is_exit_two(fixture_files, capsys):
    broken = fixture_files["dir"] / "broken.json"
    broken.write_text(json.dumps([{"id": "x", "waypoints": [{"node": "home/popular"}, {"node": "no/such"}]}]))
    code = main(["verify", "--model", str(fixture_files["model"]), "--scenarios", str(broken)])
    assert code == 2
    assert "no/such" in capsys.readouterr().err


def test_missing_file_is_exit_two(capsys):
    assert main(["verify", "--model", "/no/model.json", "--scenarios", "/no/s.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_analyze_logs_pipeline(tmp_path, capsys):
    logs = tmp_path / "logs.csv"
    logs.write_bytes(save_logs(group_a_corpus()))
    assert main(["analyze-logs", "--logs", str(logs)]) == 0
    out = capsys.readouterr().out
    assert "steps=2696 excluded=49 analyzed=2647" in out
    assert "RIGHT" in out


def test_compare_and_calibrate_commands(fixture_files, tmp_path, capsys):
    logs = tmp_path / "logs.csv"
    logs.write_bytes(save_logs(group_a_corpus()))
    report = tmp_path / "report.json"
    main(
        [
            "verify",
            "--model", str(fixture_files["model"]),
            "--scenarios", str(fixture_files["scenarios"]),
            "--report-json", str(report),
            "--no-timestamp",
        ]
    )
    capsys.readouterr()
    assert main(["compare", "--logs", str(logs), "--reports", str(report)]) == 0
    out = capsys.readouterr().out
    assert "DIFF_time" in out and "24250" in out

    assert main(["calibrate", "--logs", str(logs)]) == 0
    out = capsys.readouterr().out
    assert "UP" in out and "insufficient data" in out


def test_fixture_three_screen_documents(tmp_path):
    app = tmp_path / "app.json"
    model = tmp_path / "model.json"
    crawled = tmp_path / "crawled.json"
    assert main(["fixture", "three-screen-app", "--out", str(app)]) == 0
    assert main(["fixture", "three-screen-model", "--out", str(model)]) == 0
    assert main(["crawl", "--app", str(app), "--out", str(crawled)]) == 0

    from tvusability.model import load_model, structurally_equal

    assert structurally_equal(load_model(crawled.read_bytes()), load_model(model.read_bytes()))
