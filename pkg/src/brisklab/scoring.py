"""Criterion normalization and the four aggregation score functions.

Scores come in two flavors. The linear, product and multilinear models produce
utilities in [0, 1] (higher is better) and convert to losses as 1 - utility.
The sum-of-losses (SLoS) model produces a loss in [n, +inf] directly (lower is
better); a zero partial value makes the loss infinite and the treatment
non-recommendable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from brisklab import _kernels

ModelName = Literal["linear", "product", "multilinear", "slos"]
MODELS: tuple[ModelName, ...] = ("linear", "product", "multilinear", "slos")

#: Models whose score is a utility (SLoS is a loss already).
UTILITY_MODELS: tuple[ModelName, ...] = ("linear", "product", "multilinear")


@dataclass(frozen=True)
class CriterionSpec:
    """One benefit or risk criterion with its preference bounds.

    most_preferable and least_preferable are the raw performance values mapped
    to partial value 1 and 0. Benefits must prefer larger performances, risks
    smaller ones.
    """

    name: str
    kind: Literal["benefit", "risk"]
    most_preferable: float
    least_preferable: float

    def __post_init__(self) -> None:
        if self.kind not in ("benefit", "risk"):
            raise ValueError(f"criterion {self.name!r}: kind must be benefit or risk")
        if self.most_preferable == self.least_preferable:
            raise ValueError(f"criterion {self.name!r}: preference bounds must differ")
        if self.kind == "benefit" and not self.most_preferable > self.least_preferable:
            raise ValueError(
                f"criterion {self.name!r}: a benefit must prefer larger values"
            )
        if self.kind == "risk" and not self.most_preferable < self.least_preferable:
            raise ValueError(
                f"criterion {self.name!r}: a risk must prefer smaller values"
            )


def partial_value(spec: CriterionSpec, xi):
    """Linear partial value clamped to [0, 1].

    Accepts a scalar or array performance; out-of-range performances clamp to
    the nearest bound rather than erroring, which is what keeps downstream
    scores well defined for posterior samples beyond the elicited bounds.
    """
    lo, hi = spec.least_preferable, spec.most_preferable
    u = (np.asarray(xi, dtype=np.float64) - lo) / (hi - lo)
    u = np.clip(u, 0.0, 1.0)
    return float(u) if np.ndim(xi) == 0 else u


@dataclass(frozen=True)
class WeightSet:
    """Per-model weights; interaction_mass is the multilinear c.

    Weight vectors are stored exactly as given. Mapped vectors legitimately do
    not sum to one (the SLoS map inflates every weight below 0.5), so sum
    normalization is checked where weights enter the system, not here.
    """

    model: ModelName
    weights: tuple[float, ...]
    interaction_mass: float = 0.0

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) == 0:
            raise ValueError("weight vector is empty")
        if any(not math.isfinite(w) for w in self.weights):
            raise ValueError("weights must be finite")
        if self.model == "multilinear":
            if any(w < 0 for w in self.weights):
                raise ValueError("multilinear weights must be nonnegative")
            if not 0.0 <= self.interaction_mass <= 1.0:
                raise ValueError("interaction mass must lie in [0, 1]")
        else:
            if any(w <= 0 for w in self.weights):
                raise ValueError(f"{self.model} weights must be positive")

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Score:
    value: float
    flavor: Literal["utility", "loss"]
    model: ModelName


def _check_dims(u: Sequence[float], w: WeightSet) -> np.ndarray:
    arr = np.asarray(u, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != w.n:
        raise ValueError(
            f"partial value vector has {arr.shape} entries, expected {w.n}"
        )
    return arr.reshape(1, -1)


def linear_utility(u: Sequence[float], w: WeightSet) -> Score:
    """Weighted sum of partial values."""
    if w.model != "linear":
        raise ValueError("weight set is not for the linear model")
    row = _check_dims(u, w)
    return Score(float(_kernels.linear_scores(row, np.array(w.weights))[0]), "utility", "linear")


def product_utility(u: Sequence[float], w: WeightSet) -> Score:
    """Weighted geometric aggregation; any zero partial value gives score 0."""
    if w.model != "product":
        raise ValueError("weight set is not for the product model")
    row = _check_dims(u, w)
    return Score(float(_kernels.product_scores(row, np.array(w.weights))[0]), "utility", "product")


def multilinear_utility(u: Sequence[float], w: WeightSet) -> Score:
    """Individual terms plus equally split interaction mass.

    Requires at least two criteria; with interaction_mass 0 this is exactly the
    linear model.
    """
    if w.model != "multilinear":
        raise ValueError("weight set is not for the multilinear model")
    if w.n < 2:
        raise ValueError("multilinear aggregation needs at least two criteria")
    row = _check_dims(u, w)
    value = _kernels.multilinear_scores(row, np.array(w.weights), w.interaction_mass)[0]
    return Score(float(value), "utility", "multilinear")


def slos_loss(u: Sequence[float], w: WeightSet) -> Score:
    """Sum over criteria of (1 / u_j)^w_j; minimum n at the ideal point."""
    if w.model != "slos":
        raise ValueError("weight set is not for the slos model")
    row = _check_dims(u, w)
    return Score(float(_kernels.slos_scores(row, np.array(w.weights))[0]), "loss", "slos")


def to_loss(s: Score) -> Score:
    """1 - utility, same model. SLoS scores are losses already and are refused."""
    if s.flavor != "utility":
        raise ValueError("to_loss applies to utility scores only")
    return Score(1.0 - s.value, "loss", s.model)


def score_difference(s_i: Score, s_h: Score) -> float:
    """Difference s_i - s_h with the convention that inf - inf is a tie (0).

    Positive favors i for utilities, negative favors i for losses.
    """
    if s_i.model != s_h.model or s_i.flavor != s_h.flavor:
        raise ValueError("scores must share model and flavor")
    if math.isinf(s_i.value) and math.isinf(s_h.value):
        return 0.0
    return s_i.value - s_h.value
