"""Vectorized numpy scoring kernels.

Reference implementation for the compiled backend: identical semantics,
including IEEE handling of zero partial values (product score 0, SLoS loss
infinity) and strict-inequality win counting where ties, including inf vs inf,
count for neither side.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def _as_matrix(u: np.ndarray) -> np.ndarray:
    u = np.ascontiguousarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("expected a (samples, criteria) matrix")
    return u


def linear_scores(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Weighted arithmetic mean per row: sum_j w_j u_j."""
    return _as_matrix(u) @ np.asarray(w, dtype=np.float64)


def product_scores(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Weighted geometric form per row: prod_j u_j^w_j. Zero input annihilates."""
    u = _as_matrix(u)
    w = np.asarray(w, dtype=np.float64)
    # log path: log(0) = -inf and exp(-inf) = 0, valid because weights are > 0
    with np.errstate(divide="ignore"):
        return np.exp(np.log(u) @ w)


def multilinear_scores(u: np.ndarray, w: np.ndarray, c: float) -> np.ndarray:
    """Individual terms plus total interaction mass c split over all
    2^n - n - 1 products of order >= 2.

    The interaction sum collapses to prod_j(1 + u_j) - 1 - sum_j u_j, so the
    kernel is O(n) per row rather than exponential.
    """
    u = _as_matrix(u)
    w = np.asarray(w, dtype=np.float64)
    n = u.shape[1]
    base = u @ w
    if c == 0.0:
        return base
    interaction = np.prod(1.0 + u, axis=1) - 1.0 - u.sum(axis=1)
    return base + (c / (2**n - n - 1)) * interaction


def slos_scores(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Sum-of-losses per row: sum_j (1/u_j)^w_j. Zero input gives +inf."""
    u = _as_matrix(u)
    w = np.asarray(w, dtype=np.float64)
    with np.errstate(divide="ignore"):
        return np.sum(u ** (-w), axis=1)


def count_wins(score_i: np.ndarray, score_h: np.ndarray, smaller_wins: bool) -> tuple[int, int]:
    """Strict-win counts in both directions; ties count for neither.

    inf vs inf falls through both strict comparisons, so mutually
    non-recommendable rows are ties without special casing.
    """
    a = np.asarray(score_i, dtype=np.float64)
    b = np.asarray(score_h, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("score arrays must have equal length")
    if smaller_wins:
        return int(np.count_nonzero(a < b)), int(np.count_nonzero(b < a))
    return int(np.count_nonzero(a > b)), int(np.count_nonzero(b > a))


def paired_win_counts(
    u_i: np.ndarray,
    u_h: np.ndarray,
    w_linear: np.ndarray,
    w_product: np.ndarray,
    w_multilinear: np.ndarray,
    c: float,
    w_slos: np.ndarray,
) -> np.ndarray:
    """Strict-win counts for all four models over one shared pair of sample
    matrices. Returns int64 (4, 2): rows linear/product/multilinear/slos,
    columns (i beats h, h beats i).

    The hot path of the simulation harness; the compiled backend fuses this
    into a single pass.
    """
    u_i = _as_matrix(u_i)
    u_h = _as_matrix(u_h)
    if u_i.shape != u_h.shape:
        raise ValueError("sample matrices must have equal shape")
    out = np.empty((4, 2), dtype=np.int64)
    out[0] = count_wins(linear_scores(u_i, w_linear), linear_scores(u_h, w_linear), False)
    out[1] = count_wins(product_scores(u_i, w_product), product_scores(u_h, w_product), False)
    out[2] = count_wins(
        multilinear_scores(u_i, w_multilinear, c),
        multilinear_scores(u_h, w_multilinear, c),
        False,
    )
    out[3] = count_wins(slos_scores(u_i, w_slos), slos_scores(u_h, w_slos), True)
    return out
