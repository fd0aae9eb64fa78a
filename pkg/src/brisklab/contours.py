"""Loss surfaces over the two-criterion unit square, for contour plotting.

Utility models are shown as loss = 1 - utility so all four surfaces share an
orientation (lower is better). The weight argument is the first criterion's
weight; the second takes the remainder, minus the interaction mass for the
multilinear model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from brisklab import _kernels
from brisklab.scoring import ModelName
from brisklab.weights import WeightError

MAX_GRID = 201


@dataclass(frozen=True)
class ContourGrid:
    model: ModelName
    w1: float
    interaction_mass: float
    axis: np.ndarray  # shared u1/u2 axis values
    loss: np.ndarray  # loss[i, j] at (u1=axis[i], u2=axis[j]); +inf possible


def contour_grid(
    model: ModelName,
    w1: float,
    grid: int = 101,
    interaction_mass: float = 0.2,
) -> ContourGrid:
    """Evaluate the model's loss on a grid x grid lattice over [0, 1]^2."""
    if not 2 <= grid <= MAX_GRID:
        raise ValueError(f"grid must lie in [2, {MAX_GRID}]")
    if not 0.0 < w1 < 1.0:
        raise WeightError("w1 must lie strictly between 0 and 1")
    c = interaction_mass if model == "multilinear" else 0.0
    w2 = 1.0 - w1 - c
    if w2 <= 0.0 and model != "multilinear":
        raise WeightError("second weight must be positive")
    if w2 < 0.0:
        raise WeightError("w1 plus the interaction mass exceeds 1")

    axis = np.linspace(0.0, 1.0, grid)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    pts = np.column_stack((g1.ravel(), g2.ravel()))
    w = np.array([w1, w2])
    if model == "linear":
        vals = 1.0 - _kernels.linear_scores(pts, w)
    elif model == "product":
        vals = 1.0 - _kernels.product_scores(pts, w)
    elif model == "multilinear":
        vals = 1.0 - _kernels.multilinear_scores(pts, w, c)
    elif model == "slos":
        vals = _kernels.slos_scores(pts, w)
    else:
        raise ValueError(f"unknown model {model!r}")
    return ContourGrid(model, w1, c, axis, vals.reshape(grid, grid))


def grid_as_json(g: ContourGrid) -> dict:
    """JSON-safe dict; non-finite losses become null (strict JSON has no inf)."""
    loss = [
        [float(v) if np.isfinite(v) else None for v in row]
        for row in g.loss
    ]
    return {
        "model": g.model,
        "w1": g.w1,
        "interaction_mass": g.interaction_mass,
        "axis": [float(a) for a in g.axis],
        "loss": loss,
    }
