"""Probabilistic multi-criteria benefit-risk assessment.

Posterior uncertainty from binomial trial outcomes is propagated through
partial value functions into four aggregation models (linear, product,
multilinear, sum-of-losses), giving the probability that one treatment
outscores another and a threshold recommendation. Includes the weight mapping
that lets one elicited set of linear weights drive all four models, a
simulation harness for operating characteristics, a CLI and a JSON service.
"""

from brisklab._kernels import BACKEND as KERNEL_BACKEND
from brisklab.assess import (
    AssessmentReport,
    PosteriorSummary,
    assess,
    run_case_study,
    summarize_posteriors,
)
from brisklab.contours import contour_grid
from brisklab.datasets import (
    Arm,
    Dataset,
    DatasetError,
    case_study_dataset,
    dataset_from_dict,
    load_dataset,
)
from brisklab.posterior import (
    BetaPosterior,
    BinomialOutcome,
    ComparisonResult,
    comparison_probability,
    draw_correlated_pair,
    draw_samples,
    make_posterior,
)
from brisklab.scoring import (
    MODELS,
    CriterionSpec,
    Score,
    WeightSet,
    linear_utility,
    multilinear_utility,
    partial_value,
    product_utility,
    score_difference,
    slos_loss,
    to_loss,
)
from brisklab.simulation import SimConfig, T1_PROFILES, correlation_sensitivity, run_grid, simulate_trial
from brisklab.weights import (
    MappingRequest,
    WeightError,
    map_all_models,
    map_to_multilinear,
    map_to_product,
    map_to_slos,
    map_weight_vector,
    midpoint_slope,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "MODELS",
    "T1_PROFILES",
    "Arm",
    "AssessmentReport",
    "BetaPosterior",
    "BinomialOutcome",
    "ComparisonResult",
    "CriterionSpec",
    "Dataset",
    "DatasetError",
    "MappingRequest",
    "PosteriorSummary",
    "Score",
    "SimConfig",
    "WeightError",
    "WeightSet",
    "assess",
    "case_study_dataset",
    "comparison_probability",
    "contour_grid",
    "correlation_sensitivity",
    "dataset_from_dict",
    "draw_correlated_pair",
    "draw_samples",
    "linear_utility",
    "load_dataset",
    "make_posterior",
    "map_all_models",
    "map_to_multilinear",
    "map_to_product",
    "map_to_slos",
    "map_weight_vector",
    "midpoint_slope",
    "multilinear_utility",
    "partial_value",
    "product_utility",
    "run_case_study",
    "run_grid",
    "score_difference",
    "simulate_trial",
    "slos_loss",
    "summarize_posteriors",
    "to_loss",
]
