"""Command-line harness: solve, sweep, reproduce, check.

Exit codes are stable across commands: 0 success, 1 config/usage error (and
failed reproduce verdicts / failed assumption checks), 2 divergence detected.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from sklearn.base import clone

from .config import ConfigError, load_config
from .presets import PRESET_NAMES, run_preset
from .problem import run_assumption_probes
from .reporting import build_summary, method_spectral_radius

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGED = 2

SWEEP_HEADER = ["lambda", "termination", "iterations", "final_residual",
                "empirical_rate", "max_root_modulus"]


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _write_json(path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def cmd_solve(config_path: str) -> int:
    try:
        config = load_config(config_path)
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    solver = clone(config.solver)
    try:
        solver.fit(config.problem)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    record = solver.trajectory_
    summary = build_summary(config.problem, record,
                            lyapunov_variant=config.lyapunov,
                            spectral=config.spectral, seed=config.seed)
    if config.csv_path:
        record.write_csv(config.csv_path)
    if config.json_path:
        _write_json(config.json_path, summary)
    print(json.dumps(summary, indent=2))
    return EXIT_DIVERGED if record.termination == "diverged" else EXIT_OK


def _parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be MIN:MAX:COUNT")
    lo, hi = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if not (0.0 < lo < hi):
        raise ValueError("grid requires 0 < MIN < MAX")
    if count < 1:
        raise ValueError("grid COUNT must be >= 1")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def cmd_sweep(config_path: str, grid_spec: str) -> int:
    try:
        config = load_config(config_path)
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        grid = _parse_grid(grid_spec)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    rows = []
    any_diverged = False
    for lam in grid:
        solver = clone(config.solver)
        solver.set_params(stepsize=lam, relative=False)
        try:
            solver.fit(config.problem)
        except ValueError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        record = solver.trajectory_
        any_diverged |= record.termination == "diverged"
        radius = method_spectral_radius(config.problem, record.method, lam) \
            if config.spectral else None
        rows.append([lam, record.termination, record.iterations,
                     record.final_residual, record.empirical_rate, radius])

    out_path = config.csv_path or "sweep.csv"
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow([_fmt_cell(cell) for cell in row])
    for row in rows:
        print(f"lambda={row[0]:.6g}  {row[1]:<10} iters={row[2]:<6} "
              f"residual={row[3]:.3e}"
              + (f"  radius={row[5]:.6f}" if row[5] is not None else ""))
    print(f"sweep written to {out_path}")
    return EXIT_DIVERGED if any_diverged else EXIT_OK


def cmd_reproduce(preset: str, gamma: float, out_dir: str) -> int:
    report = run_preset(preset, gamma=gamma)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / f"{preset}.json"
    _write_json(json_path, report.summary)
    csv_path = out / f"{preset}.csv"
    if report.record is not None:
        report.record.write_csv(csv_path)
    elif report.csv_rows is not None:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(report.csv_header)
            for row in report.csv_rows:
                writer.writerow([_fmt_cell(cell) for cell in row])
    for line in report.lines:
        print(line)
    print(f"artifacts: {csv_path}, {json_path}")
    print(f"{preset}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CONFIG


def cmd_check(config_path: str, seed: int, samples: int, tol: float) -> int:
    try:
        config = load_config(config_path)
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not config.problem.known_solutions:
        print("config error: check requires problem.known_solutions",
              file=sys.stderr)
        return EXIT_CONFIG
    reports = run_assumption_probes(config.problem, n_samples=samples,
                                    seed=seed, tol=tol)
    print(f"{'assumption':<20} {'passed':<8} {'worst_violation':<18} witness")
    for rep in reports:
        witness = "-"
        if rep.witness is not None:
            a, b = rep.witness
            witness = f"{a.tolist()} / {b.tolist()}"
        print(f"{rep.assumption:<20} {'yes' if rep.passed else 'NO':<8} "
              f"{rep.worst_violation:<18.6g} {witness}")
    print(f"seed={seed} samples={samples} tol={tol:g}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viproj",
        description="Projection-type algorithms for variational inequalities: "
                    "run, sweep, reproduce boundary scenarios, check assumptions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one configured trajectory")
    p_solve.add_argument("--config", required=True, help="path to a JSON config")

    p_sweep = sub.add_parser("sweep", help="run a stepsize grid")
    p_sweep.add_argument("--config", required=True, help="path to a JSON config")
    p_sweep.add_argument("--lambdas", required=True, metavar="MIN:MAX:COUNT",
                         help="inclusive stepsize grid")

    p_rep = sub.add_parser("reproduce", help="run a named boundary scenario")
    p_rep.add_argument("preset", choices=list(PRESET_NAMES))
    p_rep.add_argument("--gamma", type=float, default=1.0,
                       help="scale of the counterexample start point (default 1)")
    p_rep.add_argument("--out", default=".", help="artifact directory")

    p_check = sub.add_parser("check", help="run the assumption probes")
    p_check.add_argument("--config", required=True, help="path to a JSON config")
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--samples", type=int, default=1000)
    p_check.add_argument("--tol", type=float, default=1e-9)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 1 is the stable usage-error code
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if args.command == "solve":
        return cmd_solve(args.config)
    if args.command == "sweep":
        return cmd_sweep(args.config, args.lambdas)
    if args.command == "reproduce":
        try:
            return cmd_reproduce(args.preset, args.gamma, args.out)
        except ValueError as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    if args.command == "check":
        return cmd_check(args.config, args.seed, args.samples, args.tol)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
