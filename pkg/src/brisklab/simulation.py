"""Two-criterion trial simulation harness: fixed reference profiles against a
9 x 9 grid of comparator profiles, repeated simulated trials, recommendation
probabilities per aggregation model, pairwise model differences, and
correlation sensitivity.

Every random draw within a trial has its own substream, keyed by (master seed,
scenario, cell, trial, component): one component per arm's count pair and one
per (arm, criterion) posterior draw. Cells can therefore run in any order or
split across workers and merge into identical results, and a rho != 0 rerun
under the same master seed changes only the draws that rho actually touches
(risk counts and the posteriors built from them), so sensitivity deltas are
computed under tightly coupled common random numbers.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from brisklab import _kernels
from brisklab.posterior import BetaPosterior, draw_correlated_pair, draw_samples
from brisklab.scoring import MODELS, ModelName
from brisklab.weights import map_to_multilinear, map_to_slos

#: Reference-arm (benefit rate, risk rate) profiles, keyed by scenario id.
T1_PROFILES: dict[int, tuple[float, float]] = {
    1: (0.5, 0.5),
    2: (0.3, 0.7),
    3: (0.7, 0.3),
    4: (0.1, 0.1),
    5: (0.9, 0.9),
    6: (0.3, 0.3),
    7: (0.7, 0.7),
    8: (0.9, 0.1),
    9: (0.1, 0.9),
}

THETA_GRID: tuple[float, ...] = tuple(round(0.1 * k, 1) for k in range(1, 10))

#: Comparator cells in CSV order: benefit rate outer, risk rate inner.
GRID_CELLS: tuple[tuple[float, float], ...] = tuple(
    (tb, tr) for tb in THETA_GRID for tr in THETA_GRID
)

#: Ordered model pairs for the difference grids.
PHI_PAIRS: tuple[tuple[ModelName, ModelName], ...] = (
    ("product", "linear"),
    ("multilinear", "linear"),
    ("multilinear", "product"),
    ("slos", "linear"),
    ("slos", "product"),
    ("slos", "multilinear"),
)


@dataclass(frozen=True)
class SimConfig:
    """Harness settings. Defaults are the reference design: 100 patients per
    arm, 2000 posterior draws, 2500 trials, psi 0.8, interaction mass 0.2,
    equal criterion weights."""

    n_patients: int = 100
    posterior_samples: int = 2000
    trials: int = 2500
    psi: float = 0.8
    interaction_mass: float = 0.2
    rho: float = 0.0
    master_seed: int = 1
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.n_patients < 1 or self.posterior_samples < 1 or self.trials < 1:
            raise ValueError("patients, posterior samples and trials must be positive")
        if not 0.5 <= self.psi < 1.0:
            raise ValueError("psi must lie in [0.5, 1)")
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [-1, 1]")
        if not 0.0 <= self.interaction_mass <= 1.0:
            raise ValueError("interaction mass must lie in [0, 1]")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def _weight_arrays(c: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    # equal linear weights; mapped once per run, not per trial
    w = 0.5
    lin = np.array([w, w])
    prod = np.array([w, w])
    ml = np.full(2, map_to_multilinear(w, c, 2))
    slos = np.full(2, map_to_slos(w))
    return lin, prod, ml, slos


def simulate_trial(
    theta1: tuple[float, float],
    theta2: tuple[float, float],
    seed,
    config: SimConfig,
    weights: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None = None,
) -> np.ndarray:
    """One simulated two-arm trial; returns the four models' probability that
    arm 1 scores better, in MODELS order. seed is an integer or a sequence of
    integers naming the trial.

    Each draw gets an independent substream keyed by (seed, component):
    components 0-1 are the two arms' count pairs, 2-5 the posterior draws in
    arm-major order with benefit before risk. Equal counts therefore give
    bit-equal posterior draws whatever happened to the other components, which
    is what makes rho sweeps under a common seed cleanly comparable.
    Degenerate counts yield point masses that draw nothing.
    """
    if weights is None:
        weights = _weight_arrays(config.interaction_mass)
    w_lin, w_prod, w_ml, w_slos = weights
    n = config.n_patients
    m = config.posterior_samples
    key = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    sub = [np.random.default_rng(key + [k]) for k in range(6)]

    pair1 = draw_correlated_pair(theta1[0], theta1[1], config.rho, n, sub[0])
    pair2 = draw_correlated_pair(theta2[0], theta2[1], config.rho, n, sub[1])

    mats = []
    for a, (benefit_events, risk_events) in enumerate(
        ((pair1.x1, pair1.x2), (pair2.x1, pair2.x2))
    ):
        sb = draw_samples(BetaPosterior(benefit_events, n - benefit_events), m, sub[2 + 2 * a])
        sr = draw_samples(BetaPosterior(risk_events, n - risk_events), m, sub[3 + 2 * a])
        # partial values: benefit is the rate itself, risk its complement
        mats.append(np.column_stack((sb, 1.0 - sr)))
    u1, u2 = mats

    wins = _kernels.paired_win_counts(
        u1, u2, w_lin, w_prod, w_ml, config.interaction_mass, w_slos
    )
    return wins[:, 0] / m


def _run_cell(
    scenario_id: int,
    cell_idx: int,
    config: SimConfig,
    weights: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    """Recommendation proportions for one comparator cell: (p_rec_t1,
    p_rec_t2), each length 4."""
    theta1 = T1_PROFILES[scenario_id]
    theta2 = GRID_CELLS[cell_idx]
    rec1 = np.zeros(4, dtype=np.int64)
    rec2 = np.zeros(4, dtype=np.int64)
    for t in range(config.trials):
        p12 = simulate_trial(
            theta1, theta2, (config.master_seed, scenario_id, cell_idx, t), config, weights
        )
        rec1 += p12 > config.psi
        rec2 += p12 < 1.0 - config.psi
    return rec1 / config.trials, rec2 / config.trials


def _cell_task(args: tuple) -> tuple[int, int, np.ndarray, np.ndarray]:
    scenario_id, cell_idx, config = args
    weights = _weight_arrays(config.interaction_mass)
    p1, p2 = _run_cell(scenario_id, cell_idx, config, weights)
    return scenario_id, cell_idx, p1, p2


@dataclass(frozen=True)
class ScenarioResult:
    """Per-cell recommendation proportions for one scenario; arrays are
    (81, 4) in GRID_CELLS x MODELS order."""

    scenario_id: int
    p_rec_t1: np.ndarray
    p_rec_t2: np.ndarray

    def phi(self) -> dict[tuple[ModelName, ModelName], np.ndarray]:
        """Pairwise differences of T1-recommendation probabilities, per cell."""
        idx = {m: k for k, m in enumerate(MODELS)}
        return {
            (x, y): self.p_rec_t1[:, idx[x]] - self.p_rec_t1[:, idx[y]]
            for x, y in PHI_PAIRS
        }


def run_grid(
    scenario_ids: Sequence[int],
    config: SimConfig,
) -> dict[int, ScenarioResult]:
    """Run the full grid for the given scenarios. Deterministic in the master
    seed regardless of worker count or completion order."""
    for s in scenario_ids:
        if s not in T1_PROFILES:
            raise ValueError(f"unknown scenario {s}")
    tasks = [(s, c, config) for s in scenario_ids for c in range(len(GRID_CELLS))]
    acc1 = {s: np.zeros((len(GRID_CELLS), 4)) for s in scenario_ids}
    acc2 = {s: np.zeros((len(GRID_CELLS), 4)) for s in scenario_ids}
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for s, c, p1, p2 in pool.map(_cell_task, tasks, chunksize=8):
                acc1[s][c] = p1
                acc2[s][c] = p2
    else:
        weights = _weight_arrays(config.interaction_mass)
        for s, c, _ in tasks:
            p1, p2 = _run_cell(s, c, config, weights)
            acc1[s][c] = p1
            acc2[s][c] = p2
    return {
        s: ScenarioResult(s, acc1[s], acc2[s]) for s in scenario_ids
    }


@dataclass(frozen=True)
class SensitivityRow:
    scenario_id: int | str  # int per scenario, "all" for the totals row
    model: ModelName
    rho: float
    count_2_5: int
    count_5: int
    total: int


def correlation_sensitivity(
    scenario_ids: Sequence[int],
    rho: float,
    config: SimConfig,
) -> tuple[list[SensitivityRow], dict[int, ScenarioResult], dict[int, ScenarioResult]]:
    """Cells whose T1-recommendation probability moves by at least 2.5 and 5
    percentage points when criterion correlation rho replaces independence.

    Both runs share the master seed (and, by the latent-pair construction,
    the actual count draws), so deltas isolate the correlation effect.
    Returns the count rows plus both underlying grids (base first).
    """
    if rho == 0.0:
        raise ValueError("sensitivity requires a nonzero rho")
    base = run_grid(scenario_ids, replace(config, rho=0.0))
    corr = run_grid(scenario_ids, replace(config, rho=rho))
    rows: list[SensitivityRow] = []
    totals = {m: [0, 0] for m in MODELS}
    for s in scenario_ids:
        delta = np.abs(corr[s].p_rec_t1 - base[s].p_rec_t1)
        for k, m in enumerate(MODELS):
            c25 = int(np.count_nonzero(delta[:, k] >= 0.025))
            c5 = int(np.count_nonzero(delta[:, k] >= 0.05))
            totals[m][0] += c25
            totals[m][1] += c5
            rows.append(SensitivityRow(s, m, rho, c25, c5, len(GRID_CELLS)))
    for m in MODELS:
        rows.append(
            SensitivityRow(
                "all", m, rho, totals[m][0], totals[m][1],
                len(GRID_CELLS) * len(scenario_ids),
            )
        )
    return rows, base, corr


# --- CSV output ----------------------------------------------------------------

RECOMMENDATIONS_HEADER = ["scenario_id", "theta2_benefit", "theta2_risk", "model", "p_rec_t1", "p_rec_t2"]
PHI_HEADER = ["scenario_id", "theta2_benefit", "theta2_risk", "pair", "phi"]
SENSITIVITY_HEADER = ["scenario_id", "model", "rho", "count_2_5", "count_5", "total"]


def write_recommendations_csv(path: str | Path, results: dict[int, ScenarioResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh)
        out.writerow(RECOMMENDATIONS_HEADER)
        for s in sorted(results):
            r = results[s]
            for c, (tb, tr) in enumerate(GRID_CELLS):
                for k, m in enumerate(MODELS):
                    out.writerow(
                        [s, f"{tb:.1f}", f"{tr:.1f}", m,
                         f"{r.p_rec_t1[c, k]:.6f}", f"{r.p_rec_t2[c, k]:.6f}"]
                    )


def write_phi_csv(path: str | Path, results: dict[int, ScenarioResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh)
        out.writerow(PHI_HEADER)
        for s in sorted(results):
            phi = results[s].phi()
            for c, (tb, tr) in enumerate(GRID_CELLS):
                for x, y in PHI_PAIRS:
                    out.writerow(
                        [s, f"{tb:.1f}", f"{tr:.1f}", f"{x}-{y}", f"{phi[(x, y)][c]:.6f}"]
                    )


def write_sensitivity_csv(path: str | Path, rows: Iterable[SensitivityRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh)
        out.writerow(SENSITIVITY_HEADER)
        for r in rows:
            out.writerow(
                [r.scenario_id, r.model, f"{r.rho:g}", r.count_2_5, r.count_5, r.total]
            )
