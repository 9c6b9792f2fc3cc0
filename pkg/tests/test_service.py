from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from tvusability.fixtures import cinemup_app, cinemup_scenarios, three_screen_model
from tvusability.model import model_to_doc, scenario_to_doc
from tvusability.service.app import create_app
from tvusability.simulator import app_to_doc


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, **overrides):
    body = {
        "app": app_to_doc(cinemup_app()),
        "scenarios": [scenario_to_doc(s) for s in cinemup_scenarios()],
        "context": "adjusted",
    }
    body.update(overrides)
    response = client.post("/api/v1/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def test_create_session_by_crawl_and_verify_matches_published_efforts(client):
    created = make_session(client)
    sid = created["session_id"]
    assert created["model_version"] == "v1"

    run = client.post(f"/api/v1/sessions/{sid}/verify").json()
    efforts = [r["resolved"]["effort_ms"] for r in run["reports"]]
    assert efforts == [24250, 8000, 85275]
    assert run["summary"]["findings_by_rule"] == {}
    assert run["model_version"] == "v1"
    assert run["run_id"] == "r1"


def test_create_session_from_model_document(client):
    response = client.post("/api/v1/sessions", json={"model": model_to_doc(three_screen_model())})
    assert response.status_code == 201
    sid = response.json()["session_id"]
    exported = client.get(f"/api/v1/sessions/{sid}/model").json()
    assert exported["model_version"] == "v1"
    assert exported["model"] == model_to_doc(three_screen_model())


def test_invalid_model_document_is_400(client):
    doc = model_to_doc(three_screen_model())
    doc["start"] = "nowhere"
    response = client.post("/api/v1/sessions", json={"model": doc})
    assert response.status_code == 400
    assert "nowhere" in response.json()["detail"]


def test_create_requires_exactly_one_source(client):
    assert client.post("/api/v1/sessions", json={}).status_code == 422


def test_context_and_thresholds_round_trip(client):
    sid = make_session(client)["session_id"]

    got = client.get(f"/api/v1/sessions/{sid}/context").json()["context"]
    assert got["name"] == "adjusted"
    assert got["delta"]["BACK"] == 1225.0

    put = client.put(f"/api/v1/sessions/{sid}/context", json={"name": "initial"})
    assert put.status_code == 200
    assert put.json()["context"]["delta"]["OK"] == 2500.0

    delta_csv = "action,delta_ms,uc\nLEFT,800,1\nRIGHT,800,1\nUP,800,0\nDOWN,800,1\nOK,2500,1\nBACK,1500,1\n"
    factors_csv = "factor,value\ndevice,1.0\nenvironment,1.0\n"
    put = client.put(
        f"/api/v1/sessions/{sid}/context", json={"delta_csv": delta_csv, "factors_csv": factors_csv}
    )
    assert put.status_code == 200
    assert put.json()["context"]["uc"]["UP"] == 0.0

    bad_csv = delta_csv.replace("BACK,1500,1\n", "")
    assert (
        client.put(f"/api/v1/sessions/{sid}/context", json={"delta_csv": bad_csv, "factors_csv": factors_csv}).status_code
        == 400
    )

    put = client.put(f"/api/v1/sessions/{sid}/thresholds", json={"name": "initial"})
    assert put.json()["thresholds"]["path_len_threshold"] == 20
    put = client.put(
        f"/api/v1/sessions/{sid}/thresholds",
        json={"nr_threshold": 2.0, "path_len_threshold": 55, "effort_threshold": 90000},
    )
    assert put.json()["thresholds"]["effort_threshold"] == 90000.0


def test_verification_history_is_append_only_and_reproducible(client):
    sid = make_session(client)["session_id"]
    first = client.post(f"/api/v1/sessions/{sid}/verify").json()
    second = client.post(f"/api/v1/sessions/{sid}/verify").json()
    assert first["run_id"] == "r1" and second["run_id"] == "r2"
    # identical inputs -> identical report content
    assert first["reports"] == second["reports"]

    runs = client.get(f"/api/v1/sessions/{sid}/runs").json()["runs"]
    assert [r["run_id"] for r in runs] == ["r1", "r2"]
    fetched = client.get(f"/api/v1/sessions/{sid}/runs/r1").json()
    assert fetched["reports"] == first["reports"]


def test_rejected_edit_keeps_version(client):
    sid = make_session(client)["session_id"]
    # duplicate (source, action): home/popular already has a DOWN edge
    response = client.post(
        f"/api/v1/sessions/{sid}/edits",
        json={"op": "add_edge", "edge": {"id": "dup", "source": "home/popular", "target": "home/top-tv", "action": "DOWN"}},
    )
    assert response.status_code == 409
    info = client.get(f"/api/v1/sessions/{sid}").json()
    assert info["model_version"] == "v1"
    assert info["versions"] == ["v1"]


def test_edit_verify_diff_loop(client):
    sid = make_session(client)["session_id"]
    client.post(f"/api/v1/sessions/{sid}/verify")

    response = client.post(
        f"/api/v1/sessions/{sid}/edits",
        json={
            "op": "add_edge",
            "edge": {"id": "shortcut", "source": "home/popular", "target": "top-rated/rated-15", "action": "UP"},
        },
    )
    assert response.status_code == 200
    assert response.json()["model_version"] == "v2"

    second = client.post(f"/api/v1/sessions/{sid}/verify").json()
    assert second["model_version"] == "v2"

    diff = client.get(f"/api/v1/sessions/{sid}/diff", params={"base": "r1", "other": "r2"}).json()
    by_scenario = {row["scenario"]: row for row in diff["scenarios"]}
    assert by_scenario["3"]["effort_delta"] <= 0
    assert by_scenario["3"]["effort_delta"] == -7000.0  # 8000 -> 1000 via the shortcut
    assert by_scenario["2"]["effort_delta"] == 0.0

    # old version still exported unchanged
    v1 = client.get(f"/api/v1/sessions/{sid}/model", params={"version": "v1"}).json()
    assert all(e["id"] != "shortcut" for e in v1["model"]["edges"])


def test_infeasible_context_reported_through_api(client):
    sid = make_session(client)["session_id"]
    delta_csv = "action,delta_ms,uc\nLEFT,1000,1\nRIGHT,1000,1\nUP,1000,1\nDOWN,1250,0\nOK,2000,1\nBACK,1225,1\n"
    factors_csv = "factor,value\ndevice,1.0\nenvironment,1.0\n"
    client.put(f"/api/v1/sessions/{sid}/context", json={"delta_csv": delta_csv, "factors_csv": factors_csv})
    run = client.post(f"/api/v1/sessions/{sid}/verify").json()
    by_scenario = {r["scenario"]: r for r in run["reports"]}
    # scenario 2 needs DOWN; 3 and 4 do not
    assert [f["rule"] for f in by_scenario["2"]["findings"]] == ["INFEASIBLE_FOR_CONTEXT"]
    assert by_scenario["3"]["findings"] == []
    assert by_scenario["4"]["findings"] == []


def test_scenarios_put_get(client):
    sid = make_session(client, scenarios=[])["session_id"]
    scenarios = [scenario_to_doc(s) for s in cinemup_scenarios()]
    put = client.put(f"/api/v1/sessions/{sid}/scenarios", json=scenarios)
    assert put.status_code == 200
    got = client.get(f"/api/v1/sessions/{sid}/scenarios").json()["scenarios"]
    assert got == scenarios

    dupes = [scenarios[0], scenarios[0]]
    assert client.put(f"/api/v1/sessions/{sid}/scenarios", json=dupes).status_code == 400


def test_unknown_session_and_run_are_404(client):
    assert client.get("/api/v1/sessions/missing").status_code == 404
    sid = make_session(client)["session_id"]
    assert client.get(f"/api/v1/sessions/{sid}/runs/r9").status_code == 404


def test_snapshot_contains_everything(client):
    sid = make_session(client)["session_id"]
    client.post(f"/api/v1/sessions/{sid}/verify")
    snapshot = client.get(f"/api/v1/sessions/{sid}/snapshot").json()
    assert snapshot["session_id"] == sid
    assert set(snapshot["versions"]) == {"v1"}
    assert len(snapshot["runs"]) == 1
    json.dumps(snapshot)  # a single self-contained document
