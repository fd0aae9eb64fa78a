"""Pairwise benefit-risk assessment of a dataset: posterior sampling, score
comparison under a chosen aggregation model, and threshold decisions.

One posterior sample stream is drawn per (arm, criterion) from the request
seed; every model, pair and summary reuses those same draws, so differences
between models are never Monte Carlo artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from brisklab.datasets import WEIGHT_SCENARIOS, Dataset, case_study_dataset
from brisklab.posterior import ComparisonResult, comparison_probability, make_posterior, draw_samples
from brisklab.scoring import MODELS, ModelName, WeightSet, partial_value
from brisklab.weights import MappingRequest, map_weight_vector


def posterior_sample_matrices(
    dataset: Dataset, m: int, seed: int
) -> dict[str, np.ndarray]:
    """Raw posterior performance samples, one (m, n_criteria) matrix per arm.

    Stream layout: one substream per (arm, criterion), derived from the seed,
    so adding arms or criteria never perturbs the others' draws.
    """
    out: dict[str, np.ndarray] = {}
    for ai, arm in enumerate(dataset.arms):
        cols = []
        for ci, outcome in enumerate(arm.outcomes):
            rng = np.random.default_rng([seed, ai, ci])
            cols.append(draw_samples(make_posterior(outcome), m, rng))
        out[arm.name] = np.column_stack(cols)
    return out


def pvf_matrices(dataset: Dataset, xi: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Partial-value transform of raw sample matrices, clamped to [0, 1]."""
    out = {}
    for name, mat in xi.items():
        cols = [
            partial_value(spec, mat[:, j]) for j, spec in enumerate(dataset.criteria)
        ]
        out[name] = np.column_stack(cols)
    return out


@dataclass(frozen=True)
class PosteriorSummary:
    arm: str
    criterion: str
    quantity: str  # "performance" (raw rate) or "partial_value"
    mean: float
    lower: float
    upper: float


def summarize_matrices(
    dataset: Dataset, xi: dict[str, np.ndarray], u: dict[str, np.ndarray]
) -> list[PosteriorSummary]:
    """Mean and equal-tailed 95% credible interval per arm, criterion and
    quantity, from already-drawn sample matrices."""
    rows: list[PosteriorSummary] = []
    for arm in dataset.arms:
        for j, spec in enumerate(dataset.criteria):
            for quantity, mat in (("performance", xi), ("partial_value", u)):
                col = mat[arm.name][:, j]
                lo, hi = np.quantile(col, [0.025, 0.975])
                rows.append(
                    PosteriorSummary(
                        arm=arm.name,
                        criterion=spec.name,
                        quantity=quantity,
                        mean=float(col.mean()),
                        lower=float(lo),
                        upper=float(hi),
                    )
                )
    return rows


def summarize_posteriors(dataset: Dataset, m: int, seed: int) -> list[PosteriorSummary]:
    xi = posterior_sample_matrices(dataset, m, seed)
    u = pvf_matrices(dataset, xi)
    return summarize_matrices(dataset, xi, u)


def weights_for_model(
    linear_weights: Sequence[float], model: ModelName, interaction_mass: float
) -> WeightSet:
    """The weight set a model actually scores with, mapped from linear weights."""
    return map_weight_vector(
        MappingRequest(tuple(linear_weights), interaction_mass, model)
    )


@dataclass(frozen=True)
class PairAssessment:
    arm_i: str
    arm_h: str
    result: ComparisonResult

    @property
    def recommended(self) -> str | None:
        if self.result.decision == "recommend_i":
            return self.arm_i
        if self.result.decision == "recommend_h":
            return self.arm_h
        return None


@dataclass(frozen=True)
class AssessmentReport:
    dataset: Dataset
    model: ModelName
    psi: float
    samples: int
    seed: int
    interaction_mass: float
    weights_used: WeightSet
    pairs: list[PairAssessment]
    summaries: list[PosteriorSummary]
    pvf_heads: dict[str, list[list[float]]] | None = None

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "arms": self.dataset.arm_names(),
            "criteria": [c.name for c in self.dataset.criteria],
            "model": self.model,
            "psi": self.psi,
            "samples": self.samples,
            "seed": self.seed,
            "interaction_mass": self.interaction_mass,
            "linear_weights": list(self.dataset.linear_weights),
            "weights_used": list(self.weights_used.weights),
            "comparisons": [
                {
                    "arm_i": p.arm_i,
                    "arm_h": p.arm_h,
                    "probability": p.result.probability,
                    "reverse_probability": p.result.reverse_probability,
                    "ties": p.result.ties,
                    "decision": p.result.decision,
                    "recommended": p.recommended,
                }
                for p in self.pairs
            ],
            "posterior_summaries": [
                {
                    "arm": s.arm,
                    "criterion": s.criterion,
                    "quantity": s.quantity,
                    "mean": s.mean,
                    "lower": s.lower,
                    "upper": s.upper,
                }
                for s in self.summaries
            ],
        }
        if self.pvf_heads is not None:
            out["pvf_samples"] = self.pvf_heads
        return out


def assess(
    dataset: Dataset,
    model: ModelName | None = None,
    psi: float | None = None,
    samples: int | None = None,
    seed: int | None = None,
    include_sample_head: bool = False,
) -> AssessmentReport:
    """Run every pairwise comparison in the dataset under one model.

    Explicit arguments override the dataset's own settings. include_sample_head
    attaches the first 200 partial-value draws per arm (plot fodder; the
    numbers themselves come from the full sample set).
    """
    model = model if model is not None else dataset.model
    psi = psi if psi is not None else dataset.psi
    samples = samples if samples is not None else dataset.samples
    seed = seed if seed is not None else dataset.seed
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")

    xi = posterior_sample_matrices(dataset, samples, seed)
    u = pvf_matrices(dataset, xi)
    w = weights_for_model(dataset.linear_weights, model, dataset.interaction_mass)

    pairs = [
        PairAssessment(a, b, comparison_probability(u[a], u[b], w, psi))
        for a, b in combinations(dataset.arm_names(), 2)
    ]
    heads = None
    if include_sample_head:
        k = min(200, samples)
        heads = {name: mat[:k].tolist() for name, mat in u.items()}
    return AssessmentReport(
        dataset=dataset,
        model=model,
        psi=psi,
        samples=samples,
        seed=seed,
        interaction_mass=dataset.interaction_mass,
        weights_used=w,
        pairs=pairs,
        summaries=summarize_matrices(dataset, xi, u),
        pvf_heads=heads,
    )


@dataclass(frozen=True)
class CaseStudyCell:
    scenario: int
    model: ModelName
    arm_i: str
    arm_h: str
    probability: float
    decision: str


@dataclass(frozen=True)
class CaseStudyReport:
    samples: int
    seed: int
    psi: float
    interaction_mass: float
    summaries: list[PosteriorSummary]
    mapped_weights: dict[int, dict[ModelName, WeightSet]]
    cells: list[CaseStudyCell]


def run_case_study(
    samples: int = 100_000,
    seed: int = 2026,
    scenarios: Sequence[int] = (1, 2, 3),
    models: Sequence[ModelName] = MODELS,
    psi: float = 0.8,
    interaction_mass: float = 0.2,
    variant: str = "analysis",
) -> CaseStudyReport:
    """Posterior summaries, mapped weights and all pairwise recommendation
    probabilities for the bundled case study.

    One draw of the posterior sample matrices serves every scenario, model and
    pair, so the whole probability table is internally consistent.
    """
    dataset = case_study_dataset(scenario=1, variant=variant)  # counts only
    xi = posterior_sample_matrices(dataset, samples, seed)
    u = pvf_matrices(dataset, xi)

    mapped: dict[int, dict[ModelName, WeightSet]] = {}
    cells: list[CaseStudyCell] = []
    for s in scenarios:
        if s not in WEIGHT_SCENARIOS:
            raise ValueError(f"unknown weight scenario {s}")
        lw = WEIGHT_SCENARIOS[s]
        mapped[s] = {
            m: weights_for_model(lw, m, interaction_mass) for m in models
        }
        for m in models:
            w = mapped[s][m]
            for a, b in combinations(dataset.arm_names(), 2):
                res = comparison_probability(u[a], u[b], w, psi)
                cells.append(
                    CaseStudyCell(
                        scenario=s,
                        model=m,
                        arm_i=a,
                        arm_h=b,
                        probability=res.probability,
                        decision=res.decision,
                    )
                )
    return CaseStudyReport(
        samples=samples,
        seed=seed,
        psi=psi,
        interaction_mass=interaction_mass,
        summaries=summarize_matrices(dataset, xi, u),
        mapped_weights=mapped,
        cells=cells,
    )
