"""HTTP facade, exercised through the in-process test client."""

import json

import pytest
from fastapi.testclient import TestClient

from brisklab.assess import assess
from brisklab.cli import main
from brisklab.datasets import dataset_from_dict
from brisklab.service import app

client = TestClient(app)


def small_payload(case_study, **overrides):
    payload = case_study.to_json_dict()
    payload.pop("weight_scenarios", None)
    payload["samples"] = 2000
    payload["seed"] = 5
    payload.update(overrides)
    return payload


def test_root_lists_endpoints():
    r = client.get("/")
    assert r.status_code == 200
    body = r.json()
    assert body["service"] == "brisklab"
    assert "POST /assess" in body["endpoints"]


def test_case_study_payload_roundtrips():
    r = client.get("/case-study")
    assert r.status_code == 200
    body = r.json()
    assert len(body["criteria"]) == 4
    assert [a["name"] for a in body["arms"]] == ["Venlafaxine", "Fluoxetine", "Placebo"]
    assert set(body["weight_scenarios"]) == {"1", "2", "3"}
    # the served payload must itself be a valid /assess body
    body.pop("weight_scenarios")
    body["samples"] = 1000
    assert client.post("/assess", json=body).status_code == 200


class TestAssess:
    def test_basic_report(self, case_study):
        r = client.post("/assess", json=small_payload(case_study))
        assert r.status_code == 200
        body = r.json()
        assert body["samples"] == 2000
        assert len(body["comparisons"]) == 3
        assert len(body["posterior_summaries"]) == 24
        assert "pvf_samples" not in body

    def test_matches_cli_bit_for_bit(self, case_study, dataset_file, capsys):
        payload = small_payload(case_study, model="slos")
        r = client.post("/assess", json=payload)
        assert r.status_code == 200
        assert main([
            "assess", str(dataset_file), "--model", "slos",
            "--samples", "2000", "--seed", "5", "--json",
        ]) == 0
        cli_body = json.loads(capsys.readouterr().out)
        assert cli_body["comparisons"] == r.json()["comparisons"]

    def test_matches_library_call(self, case_study):
        payload = small_payload(case_study, model="product")
        r = client.post("/assess", json=payload)
        dataset = dataset_from_dict(payload)
        report = assess(dataset)
        got = r.json()["comparisons"][0]["probability"]
        assert got == report.pairs[0].result.probability

    def test_include_samples_head(self, case_study):
        payload = small_payload(case_study, include_samples=True)
        r = client.post("/assess", json=payload)
        assert r.status_code == 200
        head = r.json()["pvf_samples"]
        assert set(head) == {"Venlafaxine", "Fluoxetine", "Placebo"}
        assert len(head["Placebo"]) == 200
        assert len(head["Placebo"][0]) == 4

    def test_include_samples_must_be_boolean(self, case_study):
        payload = small_payload(case_study, include_samples="yes")
        r = client.post("/assess", json=payload)
        assert r.status_code == 400
        assert r.json()["detail"]["fields"][0]["field"] == "include_samples"

    def test_sample_cap(self, case_study, monkeypatch):
        monkeypatch.setenv("BRISKLAB_SAMPLE_CAP", "1000")
        r = client.post("/assess", json=small_payload(case_study))
        assert r.status_code == 400
        fields = r.json()["detail"]["fields"]
        assert fields[0]["field"] == "samples"
        assert "cap" in fields[0]["message"]

    def test_structural_errors_are_field_level(self):
        r = client.post("/assess", json={"criteria": "x"})
        assert r.status_code == 400
        body = r.json()["detail"]
        assert body["error"] == "invalid request"
        named = {f["field"].split(".")[0].split("[")[0] for f in body["fields"]}
        assert "criteria" in named and "arms" in named

    def test_non_object_body(self):
        r = client.post("/assess", json=[1, 2, 3])
        assert r.status_code == 400
        assert r.json()["detail"]["error"] == "invalid request"

    def test_infeasible_weights_422(self, case_study):
        payload = small_payload(case_study)
        for c in payload["criteria"]:
            c["linear_weight"] = 0.4
        r = client.post("/assess", json=payload)
        assert r.status_code == 422
        body = r.json()["detail"]
        assert body["error"] == "infeasible weights"
        assert "sum" in body["message"]


class TestMapWeights:
    def test_maps_all_models(self):
        r = client.post("/map-weights", json={"linear": [0.25, 0.25, 0.25, 0.25], "c": 0.2})
        assert r.status_code == 200
        body = r.json()
        assert set(body) == {"linear", "product", "multilinear", "slos"}
        assert body["product"]["weights"] == [0.25, 0.25, 0.25, 0.25]
        assert body["multilinear"]["weights"][0] == pytest.approx(0.20)
        assert body["multilinear"]["interaction_mass"] == 0.2
        assert body["slos"]["weights"][0] == pytest.approx(0.304232898289, abs=1e-9)

    def test_rejects_non_array(self):
        r = client.post("/map-weights", json={"linear": "heavy"})
        assert r.status_code == 400
        assert r.json()["detail"]["fields"][0]["field"] == "linear"

    def test_rejects_bad_sum(self):
        r = client.post("/map-weights", json={"linear": [0.5, 0.1]})
        assert r.status_code == 422
        assert r.json()["detail"]["error"] == "infeasible weights"


class TestContours:
    def test_grid_payload(self):
        r = client.post("/contours", json={"model": "slos", "w": 0.5, "grid": 3})
        assert r.status_code == 200
        body = r.json()
        assert body["model"] == "slos"
        assert len(body["axis"]) == 3
        assert body["loss"][0][0] is None  # infinite loss at the (0, 0) corner
        assert body["loss"][1][1] == pytest.approx(2.0 * 2.0 ** 0.5)
        assert body["loss"][2][2] == 2.0

    def test_rejects_oversized_grid(self):
        r = client.post("/contours", json={"model": "linear", "w": 0.5, "grid": 300})
        assert r.status_code == 400
        assert r.json()["detail"]["fields"][0]["field"] == "grid"

    def test_rejects_unknown_model(self):
        r = client.post("/contours", json={"model": "geometric", "w": 0.5})
        assert r.status_code == 400
        assert any(f["field"] == "model" for f in r.json()["detail"]["fields"])

    def test_infeasible_weight_422(self):
        r = client.post("/contours", json={"model": "multilinear", "w": 0.95, "c": 0.2})
        assert r.status_code == 422
        assert r.json()["detail"]["error"] == "infeasible weights"
