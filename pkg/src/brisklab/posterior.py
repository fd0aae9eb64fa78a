"""Beta posteriors from binomial counts, posterior sampling, correlated
binary-pair generation, and recommendation probabilities.

The prior is the degenerate Beta(0, 0), so the posterior after x events in n
patients is Beta(x, n - x). All-or-nothing counts give point masses at 0 or 1;
a point mass draws nothing from the RNG stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy.stats import multivariate_normal, norm

from brisklab import _kernels
from brisklab.scoring import ModelName, WeightSet


@dataclass(frozen=True)
class BinomialOutcome:
    events: int
    patients: int

    def __post_init__(self) -> None:
        if self.patients <= 0:
            raise ValueError("patients must be positive")
        if not 0 <= self.events <= self.patients:
            raise ValueError("events must lie in [0, patients]")


@dataclass(frozen=True)
class BetaPosterior:
    """Beta(a, b); a or b equal to 0 marks a point mass at 1 or 0."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ValueError("shape parameters must be nonnegative")
        if self.a == 0 and self.b == 0:
            raise ValueError("Beta(0, 0) is not a distribution")

    @property
    def point_mass(self) -> float | None:
        """The constant value for degenerate posteriors, else None."""
        if self.a == 0:
            return 0.0
        if self.b == 0:
            return 1.0
        return None

    @property
    def mean(self) -> float:
        pm = self.point_mass
        return pm if pm is not None else self.a / (self.a + self.b)


def make_posterior(outcome: BinomialOutcome) -> BetaPosterior:
    return BetaPosterior(float(outcome.events), float(outcome.patients - outcome.events))


def draw_samples(p: BetaPosterior, m: int, rng: np.random.Generator) -> np.ndarray:
    """m draws from the posterior; point masses return the constant and leave
    the generator untouched."""
    if m < 1:
        raise ValueError("sample count must be at least 1")
    pm = p.point_mass
    if pm is not None:
        return np.full(m, pm, dtype=np.float64)
    return rng.beta(p.a, p.b, m)


# --- correlated binary pairs -------------------------------------------------


def frechet_bounds(theta1: float, theta2: float) -> tuple[float, float]:
    """Attainable range for the joint success probability P(X1=1, X2=1)."""
    return max(0.0, theta1 + theta2 - 1.0), min(theta1, theta2)


def _bivariate_cdf(z1: float, z2: float, r: float) -> float:
    cov = [[1.0, r], [r, 1.0]]
    return float(multivariate_normal([0.0, 0.0], cov, allow_singular=True).cdf([z1, z2]))


@lru_cache(maxsize=1024)
def _norm_ppf(theta: float) -> float:
    return float(norm.ppf(theta))


@lru_cache(maxsize=4096)
def latent_correlation(theta1: float, theta2: float, rho: float) -> tuple[float, float, bool]:
    """Latent normal correlation whose thresholded pair hits the target
    Pearson correlation rho between Bernoulli(theta1) and Bernoulli(theta2).

    Returns (latent_r, achieved_rho, clamped). The implied joint probability
    is clamped to the Frechet bounds first; on a bound the latent correlation
    is exactly +-1 (comonotone or antithetic coupling), otherwise it is found
    by bisection on the bivariate normal CDF.
    """
    if not (0.0 < theta1 < 1.0 and 0.0 < theta2 < 1.0):
        raise ValueError("marginal probabilities must lie strictly in (0, 1)")
    if not -1.0 <= rho <= 1.0:
        raise ValueError("target correlation must lie in [-1, 1]")
    sd = math.sqrt(theta1 * (1.0 - theta1) * theta2 * (1.0 - theta2))
    p11 = theta1 * theta2 + rho * sd
    lo, hi = frechet_bounds(theta1, theta2)
    clamped = False
    if p11 < lo:
        p11, clamped = lo, True
    elif p11 > hi:
        p11, clamped = hi, True
    achieved = (p11 - theta1 * theta2) / sd
    if p11 >= hi:
        return 1.0, achieved, clamped
    if p11 <= lo:
        return -1.0, achieved, clamped
    if rho == 0.0:
        return 0.0, 0.0, False
    z1, z2 = _norm_ppf(theta1), _norm_ppf(theta2)
    rlo, rhi = -1.0 + 1e-12, 1.0 - 1e-12
    for _ in range(200):
        mid = 0.5 * (rlo + rhi)
        if _bivariate_cdf(z1, z2, mid) < p11:
            rlo = mid
        else:
            rhi = mid
        if rhi - rlo < 1e-12:
            break
    return 0.5 * (rlo + rhi), achieved, clamped


@dataclass(frozen=True)
class PairedCounts:
    """Counts from n paired binary draws, enough to recover the empirical
    correlation: x11 is the number of joint successes."""

    n: int
    x1: int
    x2: int
    x11: int
    requested_rho: float
    achieved_rho: float
    latent_rho: float
    clamped: bool

    def empirical_correlation(self) -> float:
        p1, p2, p11 = self.x1 / self.n, self.x2 / self.n, self.x11 / self.n
        denom = math.sqrt(p1 * (1.0 - p1) * p2 * (1.0 - p2))
        if denom == 0.0:
            return 0.0
        return (p11 - p1 * p2) / denom


def draw_correlated_pair(
    theta1: float,
    theta2: float,
    rho: float,
    n_patients: int,
    rng: np.random.Generator,
) -> PairedCounts:
    """n_patients paired Bernoulli draws through a Gaussian copula.

    Marginals are exact Binomial(n, theta); the latent correlation targets the
    requested Pearson correlation, clamped to the attainable Frechet range
    (the clamp is reported on the result).
    """
    if n_patients <= 0:
        raise ValueError("patient count must be positive")
    latent, achieved, clamped = latent_correlation(theta1, theta2, rho)
    z = rng.standard_normal((2, n_patients))
    mix = latent * z[0] + math.sqrt(max(0.0, 1.0 - latent * latent)) * z[1]
    b1 = z[0] <= _norm_ppf(theta1)
    b2 = mix <= _norm_ppf(theta2)
    return PairedCounts(
        n=n_patients,
        x1=int(np.count_nonzero(b1)),
        x2=int(np.count_nonzero(b2)),
        x11=int(np.count_nonzero(b1 & b2)),
        requested_rho=rho,
        achieved_rho=achieved,
        latent_rho=latent,
        clamped=clamped,
    )


# --- recommendation probabilities --------------------------------------------

Decision = Literal["recommend_i", "recommend_h", "neither"]


@dataclass(frozen=True)
class ComparisonResult:
    """Estimated probability that treatment i beats treatment h, with the
    threshold decision at psi."""

    probability: float
    reverse_probability: float
    ties: float
    decision: Decision
    model: ModelName
    psi: float


def decide(probability: float, psi: float) -> Decision:
    if probability > psi:
        return "recommend_i"
    if probability < 1.0 - psi:
        return "recommend_h"
    return "neither"


_SCORERS = {
    "linear": lambda u, w: _kernels.linear_scores(u, np.array(w.weights)),
    "product": lambda u, w: _kernels.product_scores(u, np.array(w.weights)),
    "multilinear": lambda u, w: _kernels.multilinear_scores(
        u, np.array(w.weights), w.interaction_mass
    ),
    "slos": lambda u, w: _kernels.slos_scores(u, np.array(w.weights)),
}


def comparison_probability(
    samples_i: np.ndarray,
    samples_h: np.ndarray,
    w: WeightSet,
    psi: float = 0.8,
) -> ComparisonResult:
    """Share of paired draws on which i strictly beats h under the weight
    set's model.

    Strict inequalities throughout: exact ties, including the infinite-loss
    against infinite-loss case, count for neither treatment.
    """
    u_i = np.ascontiguousarray(samples_i, dtype=np.float64)
    u_h = np.ascontiguousarray(samples_h, dtype=np.float64)
    if u_i.shape != u_h.shape:
        raise ValueError("sample matrices must have equal shape")
    if not 0.5 <= psi < 1.0:
        raise ValueError("psi must lie in [0.5, 1)")
    scorer = _SCORERS[w.model]
    wins_i, wins_h = _kernels.count_wins(
        scorer(u_i, w), scorer(u_h, w), smaller_wins=(w.model == "slos")
    )
    m = u_i.shape[0]
    p = wins_i / m
    return ComparisonResult(
        probability=p,
        reverse_probability=wins_h / m,
        ties=(m - wins_i - wins_h) / m,
        decision=decide(p, psi),
        model=w.model,
        psi=psi,
    )
