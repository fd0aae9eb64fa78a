"""Dataset schema validation and the bundled case study."""

import json

import pytest

from brisklab.datasets import (
    CASE_STUDY_CRITERIA,
    WEIGHT_SCENARIOS,
    DatasetError,
    case_study_dataset,
    dataset_from_dict,
    load_dataset,
)
from brisklab.weights import WeightError


def minimal_dict():
    return {
        "criteria": [
            {"name": "effect", "kind": "benefit", "most_preferable": 0.8,
             "least_preferable": 0.2, "linear_weight": 0.6},
            {"name": "harm", "kind": "risk", "most_preferable": 0.0,
             "least_preferable": 0.5, "linear_weight": 0.4},
        ],
        "arms": [
            {"name": "A", "outcomes": [{"events": 30, "patients": 100},
                                       {"events": 10, "patients": 100}]},
            {"name": "B", "outcomes": [{"events": 20, "patients": 100},
                                       {"events": 5, "patients": 100}]},
        ],
    }


class TestValidation:
    def test_minimal_roundtrip(self):
        d = dataset_from_dict(minimal_dict())
        assert d.arm_names() == ["A", "B"]
        assert d.linear_weights == (0.6, 0.4)
        assert d.model == "linear" and d.psi == 0.8
        again = dataset_from_dict(d.to_json_dict())
        assert again.criteria == d.criteria
        assert again.arms == d.arms

    def test_all_structural_issues_collected(self):
        """One pass reports every problem, not just the first."""
        raw = minimal_dict()
        del raw["criteria"][0]["name"]
        raw["criteria"][1]["kind"] = "bonus"
        raw["arms"][0]["outcomes"][0]["events"] = "thirty"
        raw["psi"] = 1.7
        with pytest.raises(DatasetError) as e:
            dataset_from_dict(raw)
        fields = {i.field for i in e.value.issues}
        assert "criteria[0].name" in fields
        assert "criteria[1].kind" in fields
        assert "arms[0].outcomes[0].events" in fields
        assert "psi" in fields
        assert len(e.value.issues) >= 4

    def test_non_object_rejected(self):
        with pytest.raises(DatasetError):
            dataset_from_dict([1, 2, 3])

    def test_minimum_counts(self):
        raw = minimal_dict()
        raw["criteria"] = raw["criteria"][:1]
        raw["arms"][0]["outcomes"] = raw["arms"][0]["outcomes"][:1]
        raw["arms"][1]["outcomes"] = raw["arms"][1]["outcomes"][:1]
        with pytest.raises(DatasetError, match="at least two criteria"):
            dataset_from_dict(raw)

    def test_outcome_count_must_match_criteria(self):
        raw = minimal_dict()
        raw["arms"][1]["outcomes"].append({"events": 1, "patients": 10})
        with pytest.raises(DatasetError, match="expected 2"):
            dataset_from_dict(raw)

    def test_duplicate_arm_names(self):
        raw = minimal_dict()
        raw["arms"][1]["name"] = "A"
        with pytest.raises(DatasetError, match="unique"):
            dataset_from_dict(raw)

    def test_unknown_model(self):
        raw = minimal_dict()
        raw["model"] = "harmonic"
        with pytest.raises(DatasetError):
            dataset_from_dict(raw)

    def test_unknown_top_level_keys_ignored(self):
        raw = minimal_dict()
        raw["annotations"] = {"source": "pilot"}
        d = dataset_from_dict(raw)
        assert d.arm_names() == ["A", "B"]

    def test_bool_is_not_a_number(self):
        raw = minimal_dict()
        raw["criteria"][0]["linear_weight"] = True
        with pytest.raises(DatasetError):
            dataset_from_dict(raw)


class TestWeightFeasibility:
    """Weight problems are a separate failure class from malformed structure."""

    def test_rounded_sum_within_tolerance_accepted(self):
        raw = minimal_dict()
        raw["criteria"][0]["linear_weight"] = 0.58
        raw["criteria"][1]["linear_weight"] = 0.41  # sums to 0.99, fine
        dataset_from_dict(raw)

    def test_sum_outside_tolerance_rejected(self):
        raw = minimal_dict()
        raw["criteria"][0]["linear_weight"] = 0.58
        raw["criteria"][1]["linear_weight"] = 0.39
        with pytest.raises(WeightError, match="sum"):
            dataset_from_dict(raw)

    def test_boundary_weight_rejected(self):
        raw = minimal_dict()
        raw["criteria"][0]["linear_weight"] = 1.0
        raw["criteria"][1]["linear_weight"] = 0.0
        with pytest.raises(WeightError):
            dataset_from_dict(raw)

    def test_interaction_mass_range(self):
        raw = minimal_dict()
        raw["interaction_mass"] = 1.4
        with pytest.raises(WeightError):
            dataset_from_dict(raw)


class TestLoadDataset:
    def test_load_roundtrip(self, tmp_path):
        p = tmp_path / "d.json"
        p.write_text(json.dumps(minimal_dict()), encoding="utf-8")
        d = load_dataset(p)
        assert d.arm_names() == ["A", "B"]

    def test_invalid_json_is_a_dataset_error(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json", encoding="utf-8")
        with pytest.raises(DatasetError, match="invalid JSON"):
            load_dataset(p)


class TestCaseStudy:
    def test_counts(self):
        d = case_study_dataset()
        by_name = {a.name: [(o.events, o.patients) for o in a.outcomes] for a in d.arms}
        assert by_name["Venlafaxine"] == [(50, 96), (40, 100), (22, 100), (10, 100)]
        assert by_name["Fluoxetine"] == [(45, 100), (22, 102), (15, 102), (7, 102)]
        assert by_name["Placebo"] == [(37, 101), (8, 102), (14, 102), (1, 102)]

    def test_listing_variant_keeps_raw_response_count(self):
        d = case_study_dataset(variant="listing")
        venla = next(a for a in d.arms if a.name == "Venlafaxine")
        assert (venla.outcomes[0].events, venla.outcomes[0].patients) == (51, 96)

    def test_criteria_bounds(self):
        assert CASE_STUDY_CRITERIA[0].kind == "benefit"
        assert CASE_STUDY_CRITERIA[0].most_preferable == 0.8
        assert CASE_STUDY_CRITERIA[0].least_preferable == 0.2
        for risk in CASE_STUDY_CRITERIA[1:]:
            assert risk.kind == "risk"
            assert risk.most_preferable == 0.0
            assert risk.least_preferable == 0.5

    def test_weight_scenarios(self):
        assert WEIGHT_SCENARIOS[1] == (0.25, 0.25, 0.25, 0.25)
        assert WEIGHT_SCENARIOS[2] == (0.58, 0.11, 0.15, 0.15)
        assert WEIGHT_SCENARIOS[3] == (0.18, 0.28, 0.25, 0.29)
        # scenario 2 is published rounded; the sum check must absorb 0.99
        assert sum(WEIGHT_SCENARIOS[2]) == pytest.approx(0.99)

    def test_scenario_selects_weights(self):
        assert case_study_dataset(scenario=3).linear_weights == WEIGHT_SCENARIOS[3]
        with pytest.raises(ValueError):
            case_study_dataset(scenario=4)

    def test_payload_feeds_back_through_validation(self):
        d = case_study_dataset(scenario=2)
        again = dataset_from_dict(d.to_json_dict())
        assert again.linear_weights == d.linear_weights
        assert again.arms == d.arms
