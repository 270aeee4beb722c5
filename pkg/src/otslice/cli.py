"""Command-line harness: dist | gaussian-sim | bounds | complexity | flow.

Every subcommand reads a flat flag-style config (all fields defaulted
except --seed), runs the experiment, writes a CSV with a fixed documented
column order, and drops a JSON manifest next to it recording the fully
resolved configuration — the artifact is reproducible from its outputs
alone. Identical argv produce byte-identical files. Floats are written in
shortest round-trip form. An optional --plot writes a static SVG of the
primary series.

Exit codes: 0 success; 2 malformed configuration (argparse names the
offending flag); 3 input/precondition violations (module error text).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .complexity import ComplexityConfig, EXACT_W2, run_complexity_study
from .core import PointCloud, Seed, UnitDirection, sample_directions
from .exact_ot import w2_exact
from .flow import FlowConfig, eight_gaussian_mixture, train
from .gaussian_sim import (
    GaussianSimConfig,
    MAX_SLICED,
    SLICED,
    run_simulation,
)
from .maxsliced import GRID_ORACLE, SPHERE_ASCENT, check_bounds, grid_oracle_2d, sphere_ascent_best_of
from .sliced import sliced_distance
from .svgplot import line_plot

__all__ = ["run", "main", "load_cloud", "CloudLoadError"]

OUT_DIR_ENV = "OTSLICE_OUT_DIR"


class CloudLoadError(ValueError):
    """A point-cloud CSV could not be parsed."""


def load_cloud(path) -> PointCloud:
    """Read a headerless CSV, one comma-separated point per line."""
    rows = []
    dim = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CloudLoadError(f"{path}: {exc.strerror or exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        tokens = text.split(",")
        try:
            row = [float(tok) for tok in tokens]
        except ValueError:
            raise CloudLoadError(
                f"{path}: non-numeric value at line {lineno}: {text!r}"
            ) from None
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise CloudLoadError(
                f"{path}: ragged row at line {lineno}: expected {dim} values, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        raise CloudLoadError(f"{path}: empty file")
    try:
        return PointCloud(rows)
    except ValueError as exc:
        raise CloudLoadError(f"{path}: {exc}") from exc


def _fmt(value) -> str:
    if isinstance(value, float) or isinstance(value, np.floating):
        return repr(float(value))
    return str(value)


def _resolve_out(arg, default_name: str) -> Path:
    if arg is not None:
        return Path(arg)
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / default_name


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_manifest(out: Path, subcommand: str, params: dict, outputs) -> None:
    payload = {
        "subcommand": subcommand,
        "parameters": params,
        "outputs": [str(p) for p in outputs],
        "version": __version__,
    }
    with open(out.with_suffix(out.suffix + ".manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _int_list(text: str):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otslice",
        description="Sliced and max-sliced Wasserstein distance experiments.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--seed", type=int, required=True, help="root random seed")
        p.add_argument("--out", type=str, default=None, help="output CSV path")
        p.add_argument("--plot", type=str, default=None, help="optional SVG plot path")

    p = sub.add_parser("dist", help="distance between two point-cloud CSV files")
    p.add_argument("--left", type=str, required=True)
    p.add_argument("--right", type=str, required=True)
    p.add_argument("--method", choices=["exact", "sliced", "max-sliced"], default="exact")
    p.add_argument("--p", type=float, default=2.0, help="transport order (sliced)")
    p.add_argument("--num-directions", type=int, default=100)
    p.add_argument("--n-angles", type=int, default=3600)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--rate", type=float, default=0.1)
    common(p)

    p = sub.add_parser("gaussian-sim", help="Gaussian mean-learning trajectories")
    p.add_argument("--d", type=int, default=100)
    p.add_argument("--beta0", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--mode", choices=["sliced", "max"], default="sliced")
    p.add_argument("--num-directions", type=int, default=10)
    p.add_argument("--resample", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--max-steps", type=int, default=10000)
    common(p)

    p = sub.add_parser("bounds", help="mean-gap / separator / max-sliced sandwich")
    p.add_argument("--left", type=str, required=True)
    p.add_argument("--right", type=str, required=True)
    p.add_argument(
        "--upper-strategy", choices=[GRID_ORACLE, SPHERE_ASCENT], default=GRID_ORACLE
    )
    p.add_argument("--n-angles", type=int, default=3600)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--rate", type=float, default=0.1)
    common(p)

    p = sub.add_parser("complexity", help="sample-complexity gap study")
    p.add_argument("--d-grid", type=_int_list, default=(2, 8, 32))
    p.add_argument("--n-grid", type=_int_list, default=(16, 64, 256))
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--num-directions", type=int, default=128)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--ascent-steps", type=int, default=64)
    p.add_argument("--ascent-rate", type=float, default=0.1)
    common(p)

    p = sub.add_parser("flow", help="particle flow toward a target cloud")
    p.add_argument(
        "--target",
        type=str,
        default="eight-gaussians",
        help="point-cloud CSV path, or 'eight-gaussians' for the built-in mixture",
    )
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--outer-steps", type=int, default=2000)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--disc-rate", type=float, default=None)
    p.add_argument(
        "--surrogate", choices=["logistic", "moment-separator"], default="logistic"
    )
    p.add_argument("--minibatch", type=int, default=None)
    p.add_argument(
        "--feature",
        choices=["identity", "fixed-linear", "trainable-affine"],
        default="identity",
    )
    p.add_argument("--feature-dim", type=int, default=None)
    p.add_argument("--share-batches", action="store_true")
    p.add_argument("--with-replacement", action="store_true")
    p.add_argument("--eval-every", type=int, default=0)
    p.add_argument("--particles-out", type=str, default=None)
    common(p)

    return parser


def _params(args, skip=("subcommand", "out", "plot")) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _cmd_dist(args) -> int:
    left = load_cloud(args.left)
    right = load_cloud(args.right)
    if args.method == "exact":
        value, _ = w2_exact(left, right)
    elif args.method == "sliced":
        dirs = sample_directions(args.num_directions, left.dim, Seed(args.seed))
        value = sliced_distance(left, right, dirs, args.p).value
    elif left.dim == 2:
        value = grid_oracle_2d(left, right, args.n_angles).value
    else:
        value = sphere_ascent_best_of(
            left, right, args.restarts, args.steps, args.rate, seed=Seed(args.seed)
        ).value
    print(_fmt(float(value)))
    out = _resolve_out(args.out, "dist.csv")
    _write_csv(out, ["method", "value"], [(args.method, float(value))])
    _write_manifest(out, "dist", _params(args), [out])
    return 0


def _cmd_gaussian_sim(args) -> int:
    mode = MAX_SLICED if args.mode == "max" else SLICED
    e1 = np.zeros(args.d)
    e1[0] = 1.0
    config = GaussianSimConfig(
        dim=args.d,
        beta0=args.beta0,
        target_direction=UnitDirection(e1),
        learning_rate=args.alpha,
        seed=Seed(args.seed),
        num_directions=args.num_directions,
        mode=mode,
        resample=args.resample,
        max_steps=args.max_steps,
    )
    trajectory = run_simulation(config)
    out = _resolve_out(args.out, "gaussian_sim.csv")
    _write_csv(out, ["step", "beta"], trajectory.betas)
    _write_manifest(out, "gaussian-sim", _params(args), [out])
    if args.plot:
        steps = [s for s, _ in trajectory.betas]
        betas = [b for _, b in trajectory.betas]
        line_plot(
            args.plot,
            [(mode, steps, betas)],
            title=f"mean learning, d={args.d}",
            x_label="step",
            y_label="beta",
        )
    return 0


def _cmd_bounds(args) -> int:
    left = load_cloud(args.left)
    right = load_cloud(args.right)
    report = check_bounds(
        left,
        right,
        upper_strategy=args.upper_strategy,
        n_angles=args.n_angles,
        restarts=args.restarts,
        steps=args.steps,
        rate=args.rate,
        fallback_seed=Seed(args.seed),
    )
    out = _resolve_out(args.out, "bounds.csv")
    _write_csv(out, ["lower", "mid", "upper"], [(report.lower, report.mid, report.upper)])
    _write_manifest(out, "bounds", _params(args), [out])
    return 0


def _cmd_complexity(args) -> int:
    config = ComplexityConfig(
        d_grid=args.d_grid,
        n_grid=args.n_grid,
        trials=args.trials,
        mean_offset=args.delta,
        seed=Seed(args.seed),
        num_directions=args.num_directions,
        restarts=args.restarts,
        ascent_steps=args.ascent_steps,
        ascent_rate=args.ascent_rate,
    )
    table = run_complexity_study(config)
    out = _resolve_out(args.out, "complexity.csv")
    _write_csv(
        out,
        ["estimator", "d", "n", "trial", "estimate", "population", "gap"],
        [(r.estimator, r.d, r.n, r.trial, r.estimate, r.population, r.gap) for r in table.rows],
    )
    _write_manifest(out, "complexity", _params(args), [out])
    if args.plot:
        ds = sorted(set(args.d_grid))
        medians = [table.median_gap(EXACT_W2, d=d) for d in ds]
        line_plot(
            args.plot,
            [("exact-w2 median gap", ds, medians)],
            title="empirical gap vs dimension",
            x_label="d",
            y_label="median gap",
        )
    return 0


def _cmd_flow(args) -> int:
    if args.target == "eight-gaussians":
        target = eight_gaussian_mixture(args.n, Seed(args.seed).spawn(1_000_003))
    else:
        target = load_cloud(args.target)
    config = FlowConfig(
        n=args.n,
        outer_steps=args.outer_steps,
        seed=Seed(args.seed),
        k=args.k,
        alpha=args.alpha,
        disc_rate=args.disc_rate,
        surrogate=args.surrogate,
        minibatch=args.minibatch,
        with_replacement=args.with_replacement,
        share_batches=args.share_batches,
        feature=args.feature,
        feature_dim=args.feature_dim,
        eval_every=args.eval_every,
    )
    report = train(target, config)
    out = _resolve_out(args.out, "flow.csv")
    _write_csv(out, ["step", "loss"], report.loss_history)
    outputs = [out]
    particles_out = (
        Path(args.particles_out)
        if args.particles_out
        else out.with_suffix(".particles.csv")
    )
    _write_csv(
        particles_out,
        [f"x{i}" for i in range(report.final_particles.dim)],
        report.final_particles.points,
    )
    outputs.append(particles_out)
    if report.eval_history:
        eval_out = out.with_suffix(".eval.csv")
        _write_csv(eval_out, ["step", "max_sliced_distance"], report.eval_history)
        outputs.append(eval_out)
    _write_manifest(out, "flow", _params(args, skip=("subcommand", "out", "plot", "particles_out")), outputs)
    if args.plot:
        steps = [s for s, _ in report.loss_history]
        losses = [l for _, l in report.loss_history]
        line_plot(
            args.plot,
            [("loss", steps, losses)],
            title="particle flow training loss",
            x_label="outer step",
            y_label="loss",
        )
    return 0


_COMMANDS = {
    "dist": _cmd_dist,
    "gaussian-sim": _cmd_gaussian_sim,
    "bounds": _cmd_bounds,
    "complexity": _cmd_complexity,
    "flow": _cmd_flow,
}


def run(argv) -> int:
    """Parse ``argv`` (no program name) and execute one subcommand."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
