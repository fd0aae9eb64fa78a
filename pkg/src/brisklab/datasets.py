"""Assessment datasets: schema, validation, JSON round-trip, and the bundled
three-arm antidepressant case study.

A dataset file is a JSON object:

    {
      "criteria": [{"name", "kind", "most_preferable", "least_preferable",
                    "linear_weight"}, ...],
      "arms": [{"name", "outcomes": [{"events", "patients"}, ...]}, ...],
      "model": "linear" | "product" | "multilinear" | "slos",
      "interaction_mass": 0.2,      // optional, multilinear only
      "psi": 0.8,                   // optional
      "samples": 100000,            // optional
      "seed": 2026                  // optional
    }

Weights in files are always linear-model weights; mapping to the other models
happens internally. Unknown top-level keys are ignored so augmented payloads
(for example the case-study endpoint response) feed back in unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Literal

from brisklab.posterior import BinomialOutcome
from brisklab.scoring import MODELS, CriterionSpec, ModelName
from brisklab.weights import WeightError

DEFAULT_INTERACTION_MASS = 0.2
DEFAULT_PSI = 0.8
DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 2026

# Elicited weights arrive rounded; this absorbs published rounding (sums like
# 0.99) while still catching real mistakes. Vectors are never renormalized.
WEIGHT_SUM_TOLERANCE = 0.02


@dataclass(frozen=True)
class FieldIssue:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


class DatasetError(ValueError):
    """Malformed dataset: structural or type problems, named field by field."""

    def __init__(self, issues: Iterable[FieldIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class Arm:
    name: str
    outcomes: tuple[BinomialOutcome, ...]


@dataclass(frozen=True)
class Dataset:
    criteria: tuple[CriterionSpec, ...]
    linear_weights: tuple[float, ...]
    arms: tuple[Arm, ...]
    model: ModelName = "linear"
    interaction_mass: float = DEFAULT_INTERACTION_MASS
    psi: float = DEFAULT_PSI
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    extras: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def n_criteria(self) -> int:
        return len(self.criteria)

    def arm_names(self) -> list[str]:
        return [a.name for a in self.arms]

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "criteria": [
                {
                    "name": c.name,
                    "kind": c.kind,
                    "most_preferable": c.most_preferable,
                    "least_preferable": c.least_preferable,
                    "linear_weight": w,
                }
                for c, w in zip(self.criteria, self.linear_weights)
            ],
            "arms": [
                {
                    "name": a.name,
                    "outcomes": [
                        {"events": o.events, "patients": o.patients} for o in a.outcomes
                    ],
                }
                for a in self.arms
            ],
            "model": self.model,
            "interaction_mass": self.interaction_mass,
            "psi": self.psi,
            "samples": self.samples,
            "seed": self.seed,
        }
        out.update(self.extras)
        return out


def _expect(issues: list[FieldIssue], obj: Any, key: str, types, where: str):
    if not isinstance(obj, dict):
        issues.append(FieldIssue(where, "must be an object"))
        return None
    if key not in obj:
        issues.append(FieldIssue(f"{where}.{key}" if where else key, "is required"))
        return None
    val = obj[key]
    if types is float:
        ok = isinstance(val, (int, float)) and not isinstance(val, bool)
    elif types is int:
        ok = isinstance(val, int) and not isinstance(val, bool)
    else:
        ok = isinstance(val, types)
    if not ok:
        label = {float: "a number", int: "an integer", str: "a string", list: "an array"}.get(
            types, "of the expected type"
        )
        issues.append(FieldIssue(f"{where}.{key}" if where else key, f"must be {label}"))
        return None
    return val


def dataset_from_dict(raw: Any) -> Dataset:
    """Validate a parsed JSON object into a Dataset.

    Raises DatasetError (every structural problem collected, each naming its
    field) or WeightError for weight-space infeasibility.
    """
    issues: list[FieldIssue] = []
    if not isinstance(raw, dict):
        raise DatasetError([FieldIssue("", "dataset must be a JSON object")])

    crit_raw = _expect(issues, raw, "criteria", list, "")
    arms_raw = _expect(issues, raw, "arms", list, "")

    criteria: list[CriterionSpec] = []
    weights: list[float] = []
    if crit_raw is not None:
        if len(crit_raw) < 2:
            issues.append(FieldIssue("criteria", "need at least two criteria"))
        for idx, c in enumerate(crit_raw):
            where = f"criteria[{idx}]"
            name = _expect(issues, c, "name", str, where)
            kind = _expect(issues, c, "kind", str, where)
            most = _expect(issues, c, "most_preferable", float, where)
            least = _expect(issues, c, "least_preferable", float, where)
            w = _expect(issues, c, "linear_weight", float, where)
            if None in (name, kind, most, least, w):
                continue
            if kind not in ("benefit", "risk"):
                issues.append(FieldIssue(f"{where}.kind", "must be benefit or risk"))
                continue
            try:
                criteria.append(CriterionSpec(name, kind, float(most), float(least)))
            except ValueError as e:
                issues.append(FieldIssue(where, str(e)))
                continue
            weights.append(float(w))

    arms: list[Arm] = []
    if arms_raw is not None:
        if len(arms_raw) < 2:
            issues.append(FieldIssue("arms", "need at least two arms"))
        for idx, a in enumerate(arms_raw):
            where = f"arms[{idx}]"
            name = _expect(issues, a, "name", str, where)
            outs_raw = _expect(issues, a, "outcomes", list, where)
            if name is None or outs_raw is None:
                continue
            outcomes: list[BinomialOutcome] = []
            ok = True
            for j, o in enumerate(outs_raw):
                owhere = f"{where}.outcomes[{j}]"
                events = _expect(issues, o, "events", int, owhere)
                patients = _expect(issues, o, "patients", int, owhere)
                if events is None or patients is None:
                    ok = False
                    continue
                try:
                    outcomes.append(BinomialOutcome(events, patients))
                except ValueError as e:
                    issues.append(FieldIssue(owhere, str(e)))
                    ok = False
            if ok:
                arms.append(Arm(name, tuple(outcomes)))

    if criteria and arms:
        for idx, a in enumerate(arms):
            if len(a.outcomes) != len(criteria):
                issues.append(
                    FieldIssue(
                        f"arms[{idx}].outcomes",
                        f"has {len(a.outcomes)} entries, expected {len(criteria)}",
                    )
                )
        names = [a.name for a in arms]
        if len(set(names)) != len(names):
            issues.append(FieldIssue("arms", "arm names must be unique"))

    model = raw.get("model", "linear")
    if not isinstance(model, str) or model not in MODELS:
        issues.append(FieldIssue("model", f"must be one of {', '.join(MODELS)}"))

    c_mass = raw.get("interaction_mass", DEFAULT_INTERACTION_MASS)
    if not isinstance(c_mass, (int, float)) or isinstance(c_mass, bool):
        issues.append(FieldIssue("interaction_mass", "must be a number"))
        c_mass = DEFAULT_INTERACTION_MASS

    psi = raw.get("psi", DEFAULT_PSI)
    if not isinstance(psi, (int, float)) or isinstance(psi, bool) or not 0.5 <= psi < 1.0:
        issues.append(FieldIssue("psi", "must be a number in [0.5, 1)"))

    samples = raw.get("samples", DEFAULT_SAMPLES)
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
        issues.append(FieldIssue("samples", "must be a positive integer"))

    seed = raw.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        issues.append(FieldIssue("seed", "must be a nonnegative integer"))

    if issues:
        raise DatasetError(issues)

    # weight-space feasibility is a separate failure class from malformed input
    for idx, w in enumerate(weights):
        if not 0.0 < w < 1.0:
            raise WeightError(
                f"criteria[{idx}].linear_weight: {w} is outside (0, 1)"
            )
    total = sum(weights)
    if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
        raise WeightError(f"linear weights sum to {total:.4f}, expected 1")
    if not 0.0 <= float(c_mass) <= 1.0:
        raise WeightError(f"interaction_mass {c_mass} is outside [0, 1]")

    return Dataset(
        criteria=tuple(criteria),
        linear_weights=tuple(weights),
        arms=tuple(arms),
        model=model,  # type: ignore[arg-type]
        interaction_mass=float(c_mass),
        psi=float(psi),
        samples=int(samples),
        seed=int(seed),
        extras={},
    )


def load_dataset(path: str | Path) -> Dataset:
    """Read and validate a dataset JSON file."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DatasetError([FieldIssue("", f"invalid JSON: {e}")]) from None
    return dataset_from_dict(raw)


# --- bundled case study -------------------------------------------------------

CASE_STUDY_CRITERIA = (
    CriterionSpec("response", "benefit", most_preferable=0.8, least_preferable=0.2),
    CriterionSpec("nausea", "risk", most_preferable=0.0, least_preferable=0.5),
    CriterionSpec("insomnia", "risk", most_preferable=0.0, least_preferable=0.5),
    CriterionSpec("anxiety", "risk", most_preferable=0.0, least_preferable=0.5),
)

#: Elicited linear weights for the three preference scenarios.
WEIGHT_SCENARIOS: dict[int, tuple[float, float, float, float]] = {
    1: (0.25, 0.25, 0.25, 0.25),
    2: (0.58, 0.11, 0.15, 0.15),
    3: (0.18, 0.28, 0.25, 0.29),
}

_COUNTS = {
    "Venlafaxine": ((50, 96), (40, 100), (22, 100), (10, 100)),
    "Fluoxetine": ((45, 100), (22, 102), (15, 102), (7, 102)),
    "Placebo": ((37, 101), (8, 102), (14, 102), (1, 102)),
}


def case_study_dataset(
    scenario: int = 1,
    variant: Literal["analysis", "listing"] = "analysis",
) -> Dataset:
    """The bundled venlafaxine / fluoxetine / placebo comparison.

    Four criteria (response rate as benefit; nausea, insomnia and anxiety rates
    as risks) over three arms, with three elicited weight scenarios.

    The venlafaxine response count is recorded inconsistently at its source:
    the raw count listing shows 51 events of 96, while every downstream summary
    in circulation (posterior mean 0.52 with interval (0.42, 0.62), and all
    pairwise recommendation probabilities) was computed from 50 of 96. The
    default "analysis" variant uses 50 so results line up with those reference
    summaries; "listing" preserves the raw table value.
    """
    if scenario not in WEIGHT_SCENARIOS:
        raise ValueError(f"scenario must be one of {sorted(WEIGHT_SCENARIOS)}")
    if variant not in ("analysis", "listing"):
        raise ValueError("variant must be analysis or listing")
    arms = []
    for name, counts in _COUNTS.items():
        if name == "Venlafaxine" and variant == "listing":
            counts = ((51, 96),) + counts[1:]
        arms.append(Arm(name, tuple(BinomialOutcome(x, n) for x, n in counts)))
    return Dataset(
        criteria=CASE_STUDY_CRITERIA,
        linear_weights=WEIGHT_SCENARIOS[scenario],
        arms=tuple(arms),
        model="linear",
        interaction_mass=DEFAULT_INTERACTION_MASS,
        psi=DEFAULT_PSI,
        samples=DEFAULT_SAMPLES,
        seed=DEFAULT_SEED,
        extras={"weight_scenarios": {str(k): list(v) for k, v in WEIGHT_SCENARIOS.items()}},
    )
