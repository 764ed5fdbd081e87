"""Command-line entry point.

Commands map configs onto runs and write CSV/report files:

* ``spectrum``  -- labeled level diagram along the pulse (levels.csv,
  trajectory.csv);
* ``evolve``    -- propagate the pulse, project the gate and score it
  (report + gate_matrix.csv, optionally overlaps.csv);
* ``optimize``  -- pulse-parameter search (log.csv, summary.txt,
  optimized_pulse.cfg) or, with ``--grid``, an error-landscape scan
  (scan.csv);
* ``analytics`` -- closed-form dispersive estimates for the device;
* ``verify``    -- the end-to-end verification suite.

Exit codes: 0 success, 1 verification/feasibility failure, 2 bad config.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace as dc_replace
from pathlib import Path

from .config import ConfigError, RunConfig, load_config
from .metrics import computational_basis, gate_error, project_gate
from .model import ModelError
from .optimizer import grid_scan, minimize
from .perturbation import SingularEstimateError, estimates
from .propagator import evolve
from .pulses import PulseConfigError
from .reports import (
    breakdown_lines,
    gate_matrix_csv,
    levels_csv,
    opt_summary_lines,
    optimization_log_csv,
    overlaps_csv,
    scan_csv,
    trajectory_csv,
    write_csv,
)
from .spectra import comoving_overlaps, spectrum_sweep
from .verification import run_all

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="buscz",
        description="Single-step controlled-Z pulse simulation and optimization "
        "for a tunable qubit/bus/qubit device.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed=False, overlaps=False, grid=False):
        p.add_argument(
            "--config",
            required=True,
            help="config file path, or the name of a bundled fixture "
            "(idle, cz_optimum, swap3, nearres)",
        )
        p.add_argument("--out", help="output directory (overrides [output] dir)")
        p.add_argument("--dt", type=float, help="integration step in ns (overrides [numerics] dt_ns)")
        if seed:
            p.add_argument("--seed", type=int, help="optimizer seed (overrides [optimize] seed)")
        if overlaps:
            p.add_argument(
                "--overlaps",
                action="store_true",
                help="also compute comoving-eigenstate overlaps (overlaps.csv)",
            )
        if grid:
            p.add_argument(
                "--grid",
                type=int,
                nargs="+",
                metavar="N",
                help="scan the objective on a rectangular grid instead of optimizing "
                "(one resolution per parameter)",
            )

    add_common(sub.add_parser("spectrum", help="labeled level diagram along the pulse"))
    add_common(sub.add_parser("evolve", help="propagate, project, and score the gate"), overlaps=True)
    add_common(sub.add_parser("optimize", help="search pulse parameters"), seed=True, grid=True)
    add_common(sub.add_parser("analytics", help="closed-form dispersive estimates"))
    add_common(sub.add_parser("verify", help="run the verification suite"), seed=True)
    return parser


def _load(args) -> tuple[RunConfig, Path]:
    cfg = load_config(args.config)
    if args.dt is not None:
        if args.dt <= 0:
            raise ConfigError("--dt must be positive")
        cfg = dc_replace(cfg, numerics={**cfg.numerics, "dt_ns": args.dt})
    out = Path(args.out) if args.out else cfg.out_dir
    return cfg, out


def cmd_spectrum(args) -> int:
    cfg, out = _load(args)
    params = cfg.device_params()
    traj = cfg.trajectory(params)
    spectrum = spectrum_sweep(traj, params, cfg.sample_dt)
    p1 = levels_csv(out / "levels.csv", spectrum)
    p2 = trajectory_csv(out / "trajectory.csv", traj, cfg.sample_dt)
    print(f"wrote {p1}")
    print(f"wrote {p2}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    cfg, out = _load(args)
    params = cfg.device_params()
    traj = cfg.trajectory(params)
    result = evolve(traj, params, dt=cfg.dt)
    basis = computational_basis(params)
    m = project_gate(result, basis)
    breakdown = gate_error(m)

    lines = [
        f"config              : {cfg.source}",
        f"pulse type          : {cfg.pulse_type}",
        f"t_gate              : {traj.t_gate:g} ns, dt = {cfg.dt:g} ns",
        f"unitarity defect    : {result.unitarity_defect:.3e}",
        "",
        *breakdown_lines(breakdown),
    ]
    print("\n".join(lines))
    p = gate_matrix_csv(out / "gate_matrix.csv", m, basis.labels)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {p}")
    print(f"wrote {out / 'report.txt'}")
    if args.overlaps:
        trace = comoving_overlaps(traj, params, sample_dt=cfg.sample_dt, dt=cfg.dt)
        p = overlaps_csv(out / "overlaps.csv", trace)
        print(f"wrote {p}")
    return EXIT_OK


def _emit_pulse_config(cfg: RunConfig, names, values, path: Path):
    """Re-usable single-step pulse config carrying the optimized parameters."""
    if cfg.pulse_type != "single_step":
        return None
    by_name = {name: float(value) for name, value in zip(names, values)}
    d = cfg.device
    text = "\n".join(
        [
            "# Optimized single-step CZ pulse (written by `buscz optimize`).",
            "",
            "[device]",
            *[f"{k} = {v:.12g}" for k, v in d.items()],
            "",
            "[pulse]",
            "type = single_step",
            # repr round-trips exactly; the phase constraint is sensitive
            # to ~1e-9 ns changes in the duration
            f"undershoot_mhz = {by_name['undershoot_mhz']!r}",
            f"t_undershoot_ns = {by_name['t_undershoot_ns']!r}",
            f"sigma_in_ns = {cfg.pulse['sigma_in_ns']:.12g}",
            f"sigma_fin_ns = {cfg.pulse['sigma_fin_ns']:.12g}",
            f"t_gate_ns = {cfg.pulse['t_gate_ns']:.12g}",
            "",
            "[numerics]",
            f"dt_ns = {cfg.numerics['dt_ns']:.12g}",
            f"sample_dt_ns = {cfg.numerics['sample_dt_ns']:.12g}",
            f"bus_levels = {cfg.numerics['bus_levels']}",
            "",
        ]
    )
    path.write_text(text)
    return path


def cmd_optimize(args) -> int:
    cfg, out = _load(args)
    problem = cfg.problem(seed=args.seed)

    if args.grid:
        if len(args.grid) != len(problem.names):
            raise ConfigError(
                f"--grid needs {len(problem.names)} resolutions ({', '.join(problem.names)})"
            )
        evals = grid_scan(problem, args.grid)
        p = scan_csv(out / "scan.csv", evals, problem.names)
        print(f"wrote {p} ({len(evals)} evaluations)")
        return EXIT_OK

    result = minimize(problem)
    lines = opt_summary_lines(result, problem.names)
    print("\n".join(lines))
    out.mkdir(parents=True, exist_ok=True)
    p = optimization_log_csv(out / "log.csv", result.log, problem.names)
    (out / "summary.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {p}")
    print(f"wrote {out / 'summary.txt'}")
    emitted = _emit_pulse_config(cfg, problem.names, result.best_params, out / "optimized_pulse.cfg")
    if emitted:
        print(f"wrote {emitted}")
    return EXIT_OK if result.feasible else EXIT_FAILURE


def cmd_analytics(args) -> int:
    cfg, _ = _load(args)
    params = cfg.device_params()
    est = estimates(params)
    print(f"config : {cfg.source}")
    print("\n".join(est.lines()))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg, out = _load(args)
    results = run_all(cfg, seed=args.seed)
    for r in results:
        print(r.line())
    n_fail = sum(not r.passed for r in results)
    write_csv(
        out / "verify_results.csv",
        ["criterion", "name", "passed", "details"],
        [[r.number, r.name, r.passed, r.details.replace(",", ";")] for r in results],
    )
    print(f"wrote {out / 'verify_results.csv'}")
    print(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return EXIT_OK if n_fail == 0 else EXIT_FAILURE


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "spectrum": cmd_spectrum,
        "evolve": cmd_evolve,
        "optimize": cmd_optimize,
        "analytics": cmd_analytics,
        "verify": cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except (ConfigError, PulseConfigError, ModelError, SingularEstimateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
