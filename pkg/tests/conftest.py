import json

import pytest

from brisklab.datasets import case_study_dataset


@pytest.fixture(scope="session")
def case_study():
    return case_study_dataset()


@pytest.fixture(scope="session")
def small_dataset_dict(case_study):
    """Case-study payload trimmed to a sample count that keeps tests fast."""
    d = case_study.to_json_dict()
    d["samples"] = 4000
    d.pop("weight_scenarios", None)
    return d


@pytest.fixture()
def dataset_file(tmp_path, small_dataset_dict):
    p = tmp_path / "dataset.json"
    p.write_text(json.dumps(small_dataset_dict), encoding="utf-8")
    return p
