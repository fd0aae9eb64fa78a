"""Command-line interface.

Subcommands map one-to-one onto the library: case-study (bundled comparison,
all tables), simulate (operating-characteristic grids), map-weights,
contours, assess (score a dataset file) and serve (the JSON service). Every
subcommand is deterministic under --seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from brisklab import __version__
from brisklab._kernels import BACKEND
from brisklab.assess import assess, run_case_study
from brisklab.contours import MAX_GRID, contour_grid
from brisklab.datasets import DatasetError, load_dataset
from brisklab.scoring import MODELS
from brisklab.simulation import (
    SimConfig,
    T1_PROFILES,
    correlation_sensitivity,
    run_grid,
    write_phi_csv,
    write_recommendations_csv,
    write_sensitivity_csv,
)
from brisklab.weights import WeightError, map_all_models

SMALL_SAMPLE_WARNING = 1000


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _pct(p: float) -> str:
    return f"{100.0 * p:.1f}%"


def cmd_case_study(args: argparse.Namespace) -> int:
    if args.samples < SMALL_SAMPLE_WARNING:
        _warn(
            f"{args.samples} samples gives wide Monte Carlo variance; "
            "use 100000 for publication-quality numbers"
        )
    scenarios = (1, 2, 3) if args.scenario == "all" else (int(args.scenario),)
    models = MODELS if args.model == "all" else (args.model,)
    report = run_case_study(
        samples=args.samples,
        seed=args.seed,
        scenarios=scenarios,
        models=models,
        psi=args.psi,
        interaction_mass=args.interaction_mass,
        variant=args.variant,
    )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "posterior_summaries.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["arm", "criterion", "quantity", "mean", "lower", "upper"])
        for s in report.summaries:
            w.writerow(
                [s.arm, s.criterion, s.quantity, f"{s.mean:.6f}", f"{s.lower:.6f}", f"{s.upper:.6f}"]
            )

    with open(out / "mapped_weights.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["scenario", "model", "w1", "w2", "w3", "w4", "interaction_mass"])
        for s in scenarios:
            for m in models:
                ws = report.mapped_weights[s][m]
                c = ws.interaction_mass if m == "multilinear" else 0.0
                w.writerow([s, m] + [f"{x:.6f}" for x in ws.weights] + [f"{c:.2f}"])

    with open(out / "probabilities.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["scenario", "model", "arm_i", "arm_h", "probability", "decision"])
        for cell in report.cells:
            w.writerow(
                [cell.scenario, cell.model, cell.arm_i, cell.arm_h,
                 f"{cell.probability:.6f}", cell.decision]
            )

    lines = [
        f"Pairwise benefit-risk assessment ({args.samples} samples, seed {args.seed}, psi {args.psi})",
        "",
        "Posterior summaries, mean (95% CrI):",
    ]
    for s in report.summaries:
        if s.quantity == "partial_value":
            continue
        u = next(
            x for x in report.summaries
            if x.arm == s.arm and x.criterion == s.criterion and x.quantity == "partial_value"
        )
        lines.append(
            f"  {s.arm:12s} {s.criterion:9s} rate {s.mean:.2f} ({s.lower:.2f}, {s.upper:.2f})"
            f"   value {u.mean:.2f} ({u.lower:.2f}, {u.upper:.2f})"
        )
    lines.append("")
    lines.append("Probability that the first arm outscores the second:")
    for cell in report.cells:
        lines.append(
            f"  scenario {cell.scenario} {cell.model:12s} "
            f"{cell.arm_i} vs {cell.arm_h}: {_pct(cell.probability)} ({cell.decision})"
        )
    text = "\n".join(lines) + "\n"
    (out / "report.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    print(f"wrote {out}/posterior_summaries.csv, mapped_weights.csv, probabilities.csv, report.txt")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    scenarios = (
        tuple(sorted(T1_PROFILES)) if args.scenario == "all" else (int(args.scenario),)
    )
    config = SimConfig(
        n_patients=args.patients,
        posterior_samples=args.posterior_samples,
        trials=args.trials,
        psi=args.psi,
        interaction_mass=args.interaction_mass,
        rho=args.rho,
        master_seed=args.seed,
        jobs=args.jobs,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.rho != 0.0:
        rows, base, corr = correlation_sensitivity(scenarios, args.rho, config)
        write_sensitivity_csv(out / "correlation_sensitivity.csv", rows)
        write_recommendations_csv(out / "recommendations.csv", corr)
        write_phi_csv(out / "phi.csv", corr)
        write_recommendations_csv(out / "recommendations_rho0.csv", base)
        for r in rows:
            if r.scenario_id == "all":
                print(
                    f"rho={args.rho:g} {r.model}: {r.count_2_5}/{r.total} cells moved >=2.5pp, "
                    f"{r.count_5}/{r.total} moved >=5pp"
                )
        print(
            f"wrote {out}/recommendations.csv, phi.csv, correlation_sensitivity.csv, "
            "recommendations_rho0.csv"
        )
    else:
        results = run_grid(scenarios, config)
        write_recommendations_csv(out / "recommendations.csv", results)
        write_phi_csv(out / "phi.csv", results)
        print(f"wrote {out}/recommendations.csv, phi.csv")
    return 0


def cmd_map_weights(args: argparse.Namespace) -> int:
    try:
        mapped = map_all_models(args.weights, args.interaction_mass)
    except WeightError as e:
        return _fail(f"infeasible weights: {e}")
    total = sum(args.weights)
    if abs(total - 1.0) > 0.02:
        return _fail(f"infeasible weights: linear weights sum to {total:.4f}, expected 1")
    ml = mapped["multilinear"]
    floored = [
        i for i, (wl, wm) in enumerate(zip(args.weights, ml.weights))
        if wm == 0.0 and wl - args.interaction_mass / len(args.weights) < 0.0
    ]
    if floored:
        _warn(
            "multilinear weight floored at 0 for position(s) "
            + ", ".join(str(i + 1) for i in floored)
            + " (raw value was negative)"
        )
    models = MODELS if args.model == "all" else (args.model,)
    if args.json:
        payload = {
            m: {
                "weights": list(mapped[m].weights),
                "interaction_mass": mapped[m].interaction_mass if m == "multilinear" else 0.0,
            }
            for m in models
        }
        print(json.dumps(payload, indent=2))
    else:
        for m in models:
            ws = " ".join(f"{w:.4f}" for w in mapped[m].weights)
            suffix = f"  c={args.interaction_mass:g}" if m == "multilinear" else ""
            print(f"{m:12s} {ws}{suffix}")
    return 0


def cmd_contours(args: argparse.Namespace) -> int:
    try:
        g = contour_grid(args.model, args.w, args.grid, args.interaction_mass)
    except (WeightError, ValueError) as e:
        return _fail(str(e))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["u1", "u2", "loss"])
        for i, a in enumerate(g.axis):
            for j, b in enumerate(g.axis):
                v = g.loss[i, j]
                w.writerow([f"{a:.6f}", f"{b:.6f}", "inf" if np.isinf(v) else f"{v:.6f}"])
    print(f"wrote {args.out} ({args.grid}x{args.grid} {args.model} loss grid, w1={args.w:g})")
    return 0


def cmd_assess(args: argparse.Namespace) -> int:
    try:
        dataset = load_dataset(args.dataset)
    except DatasetError as e:
        print("error: invalid dataset", file=sys.stderr)
        for issue in e.issues:
            print(f"  {issue}", file=sys.stderr)
        return 2
    except WeightError as e:
        return _fail(f"infeasible weights: {e}")
    except OSError as e:
        return _fail(str(e))

    samples = args.samples if args.samples is not None else dataset.samples
    if samples < SMALL_SAMPLE_WARNING:
        _warn(f"{samples} samples gives wide Monte Carlo variance")
    try:
        report = assess(
            dataset,
            model=args.model,
            psi=args.psi,
            samples=args.samples,
            seed=args.seed,
        )
    except WeightError as e:
        return _fail(f"infeasible weights: {e}")

    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2))
        return 0
    print(f"model {report.model}, psi {report.psi}, {report.samples} samples, seed {report.seed}")
    for p in report.pairs:
        rec = p.recommended if p.recommended else "neither"
        print(
            f"  {p.arm_i} vs {p.arm_h}: {_pct(p.result.probability)} -> {rec}"
        )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    os.environ["BRISKLAB_SAMPLE_CAP"] = str(args.sample_cap)
    uvicorn.run(
        "brisklab.service:app",
        host=args.host,
        port=args.port,
        workers=args.workers,
        log_level="info",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brisklab",
        description="Probabilistic multi-criteria benefit-risk assessment",
    )
    parser.add_argument("--version", action="version", version=f"brisklab {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("case-study", help="run the bundled three-arm comparison, writing all tables")
    p.add_argument("--scenario", choices=["1", "2", "3", "all"], default="all",
                   help="weight scenario (default all)")
    p.add_argument("--all", dest="scenario", action="store_const", const="all",
                   help="all scenarios and models")
    p.add_argument("--model", choices=list(MODELS) + ["all"], default="all")
    p.add_argument("--samples", type=int, default=100_000, help="posterior draws per arm and criterion")
    p.add_argument("--seed", type=int, default=2026)
    p.add_argument("--psi", type=float, default=0.8, help="recommendation threshold")
    p.add_argument("--c", dest="interaction_mass", type=float, default=0.2, metavar="C")
    p.add_argument("--variant", choices=["analysis", "listing"], default="analysis",
                   help="venlafaxine response count convention (see datasets docs)")
    p.add_argument("--out", default="case-study-out", help="output directory")
    p.set_defaults(func=cmd_case_study)

    p = sub.add_parser(
        "simulate",
        help="run the trial simulation grid; with --rho also the correlation sensitivity "
             "(which runs the independent baseline too)",
    )
    p.add_argument("--scenario", choices=[str(k) for k in sorted(T1_PROFILES)] + ["all"], default="all")
    p.add_argument("--trials", type=int, default=2500)
    p.add_argument("--posterior-samples", type=int, default=2000)
    p.add_argument("--patients", type=int, default=100, help="patients per arm")
    p.add_argument("--psi", type=float, default=0.8)
    p.add_argument("--c", dest="interaction_mass", type=float, default=0.2, metavar="C")
    p.add_argument("--rho", type=float, default=0.0, help="within-arm criterion correlation")
    p.add_argument("--seed", type=int, default=1, help="master seed")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default="simulation-out", help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("map-weights", help="map linear weights onto the other models")
    p.add_argument("weights", type=float, nargs="+", metavar="W")
    p.add_argument("--c", dest="interaction_mass", type=float, default=0.2, metavar="C")
    p.add_argument("--model", choices=list(MODELS) + ["all"], default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_map_weights)

    p = sub.add_parser("contours", help="evaluate a loss surface on the unit square")
    p.add_argument("--model", choices=list(MODELS), default="linear")
    p.add_argument("--w", type=float, default=0.5, help="first criterion weight")
    p.add_argument("--grid", type=int, default=101, help=f"points per side (max {MAX_GRID})")
    p.add_argument("--c", dest="interaction_mass", type=float, default=0.2, metavar="C")
    p.add_argument("--out", default="contours.csv")
    p.set_defaults(func=cmd_contours)

    p = sub.add_parser("assess", help="score a dataset JSON file")
    p.add_argument("dataset", help="path to a dataset JSON file")
    p.add_argument("--model", choices=list(MODELS), default=None)
    p.add_argument("--psi", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("serve", help="start the JSON service")
    p.add_argument("--host", default=os.environ.get("BRISKLAB_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("BRISKLAB_PORT", "8000")))
    p.add_argument("--workers", type=int, default=int(os.environ.get("BRISKLAB_WORKERS", "1")))
    p.add_argument(
        "--sample-cap",
        type=int,
        default=int(os.environ.get("BRISKLAB_SAMPLE_CAP", "200000")),
        help="maximum samples per service request",
    )
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
