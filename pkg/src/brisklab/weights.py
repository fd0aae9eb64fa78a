"""Mapping elicited linear-model weights onto the other aggregation models.

The maps equate the tangent slope of each model's score contour through the
midpoint u = (0.5, 0.5) with the linear model's slope, so one elicitation
serves all four models. Mapped vectors are intentionally left unnormalized;
the SLoS map inflates weights below 0.5, and renormalizing would change the
midpoint slope the map just established.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from brisklab.scoring import ModelName, WeightSet

# Bisection bracket for the SLoS map. g is strictly increasing on (0, 1) with
# range (0, inf), so the root always lies inside.
_BRACKET_LO = 1e-12
_BRACKET_HI = 1.0 - 1e-12
_TOL = 1e-10
_MAX_ITER = 200


class WeightError(ValueError):
    """Raised when a weight vector is infeasible for the requested mapping."""


def _check_open_unit(w: float) -> None:
    if not 0.0 < w < 1.0:
        raise WeightError(f"weight {w!r} must lie strictly between 0 and 1")


def map_to_product(w_l: float) -> float:
    """The product weight coincides with the linear weight."""
    _check_open_unit(w_l)
    return w_l


def map_to_multilinear(w_l: float, c: float, n: int) -> float:
    """Shift by c/n, floored at zero.

    A raw negative value means the criterion's whole importance is absorbed by
    the interaction terms; it maps to 0 rather than a negative weight.
    """
    if not 0.0 <= c <= 1.0:
        raise WeightError("interaction mass must lie in [0, 1]")
    if n < 2:
        raise WeightError("multilinear mapping needs at least two criteria")
    _check_open_unit(w_l)
    return max(0.0, w_l - c / n)


def slos_slope(w: float) -> float:
    """g(w) = [w / (1-w)] * 2^(2w-1), the SLoS contour slope at the midpoint."""
    return w / (1.0 - w) * 2.0 ** (2.0 * w - 1.0)


def map_to_slos(w_l: float) -> float:
    """Solve g(w) = w_l / (1 - w_l) for w by bisection.

    g is strictly increasing, so the root is unique; the bracket endpoints
    pinch it to absolute tolerance 1e-10.
    """
    _check_open_unit(w_l)
    target = w_l / (1.0 - w_l)
    lo, hi = _BRACKET_LO, _BRACKET_HI
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        value = slos_slope(mid)
        if value == target:
            return mid  # exact hit; keeps the w=0.5 fixed point exact
        if value < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < _TOL:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class MappingRequest:
    linear_weights: tuple[float, ...]
    interaction_mass: float = 0.0
    target_model: ModelName = "linear"

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "linear_weights", tuple(float(w) for w in self.linear_weights)
        )
        for w in self.linear_weights:
            _check_open_unit(w)
        if not 0.0 <= self.interaction_mass <= 1.0:
            raise WeightError("interaction mass must lie in [0, 1]")


def map_weight_vector(req: MappingRequest) -> WeightSet:
    """Apply the scalar map marginally to every weight. No renormalization."""
    w = req.linear_weights
    model = req.target_model
    if model == "linear":
        return WeightSet("linear", w)
    if model == "product":
        return WeightSet("product", tuple(map_to_product(x) for x in w))
    if model == "multilinear":
        mapped = tuple(map_to_multilinear(x, req.interaction_mass, len(w)) for x in w)
        return WeightSet("multilinear", mapped, req.interaction_mass)
    if model == "slos":
        return WeightSet("slos", tuple(map_to_slos(x) for x in w))
    raise WeightError(f"unknown target model {model!r}")


def map_all_models(
    linear_weights: Sequence[float], interaction_mass: float
) -> dict[ModelName, WeightSet]:
    """Mapped weight sets for every model, keyed by model name."""
    w = tuple(float(x) for x in linear_weights)
    return {
        m: map_weight_vector(MappingRequest(w, interaction_mass, m))
        for m in ("linear", "product", "multilinear", "slos")
    }


def midpoint_slope(w: WeightSet) -> float:
    """Contour tangent slope at u = (0.5, 0.5) for a two-criterion weight set.

    Verification helper: for mapped weights this equals the linear model's
    w1/w2 (multilinear excluded when flooring was triggered).
    """
    if w.n != 2:
        raise ValueError("midpoint slope is defined for two criteria")
    w1, w2 = w.weights
    if w.model == "linear":
        return w1 / w2
    if w.model == "product":
        return w1 / (1.0 - w1)
    if w.model == "multilinear":
        c = w.interaction_mass
        return (w1 + c / 2.0) / (w2 + c / 2.0)
    return slos_slope(w1)
