"""Deterministic CSV and text reports.

All floating-point output uses 12 significant digits so identical runs
produce byte-identical files; every CSV carries a header naming columns
with units.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .metrics import ErrorBreakdown
from .model import BareLabel
from .optimizer import Evaluation, OptResult
from .pulses import FrequencyTrajectory
from .spectra import LabeledSpectrum, OverlapTrace

SINGLE_EXCITATION = (BareLabel(1, 0, 0), BareLabel(0, 1, 0), BareLabel(0, 0, 1))
DOUBLE_EXCITATION = (
    BareLabel(2, 0, 0),
    BareLabel(1, 1, 0),
    BareLabel(1, 0, 1),
    BareLabel(0, 2, 0),
    BareLabel(0, 1, 1),
    BareLabel(0, 0, 2),
)


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")
    return path


def trajectory_csv(path: Path, traj: FrequencyTrajectory, sample_dt: float) -> Path:
    n = int(round(traj.t_gate / sample_dt))
    times = np.linspace(0.0, traj.t_gate, n + 1)
    nu1, nu2 = traj.sample(times)
    return write_csv(
        path,
        ["t_ns", "nu_q1_ghz", "nu_q2_ghz"],
        zip(times, nu1, nu2),
    )


def levels_csv(path: Path, spectrum: LabeledSpectrum) -> Path:
    labels = SINGLE_EXCITATION + DOUBLE_EXCITATION
    header = (
        ["t_ns"]
        + [f"nu_{lab}_ghz" for lab in labels]
        + [f"bare_nu_{lab}_ghz" for lab in labels]
    )
    dressed = [spectrum.eigen_curve(lab) for lab in labels]
    bare = [spectrum.bare_curve(lab) for lab in labels]
    rows = (
        [t] + [col[j] for col in dressed] + [col[j] for col in bare]
        for j, t in enumerate(spectrum.times)
    )
    return write_csv(path, header, rows)


def overlaps_csv(path: Path, trace: OverlapTrace) -> Path:
    header = ["t_ns"]
    for j_lab in trace.logic_labels:
        header.extend(f"p_{k_lab}_{j_lab}" for k_lab in trace.eig_labels)
    header.extend(f"psum_{j_lab}" for j_lab in trace.logic_labels)
    sums = trace.completeness()
    rows = (
        [t]
        + [
            trace.probabilities[i, k, j]
            for j in range(len(trace.logic_labels))
            for k in range(len(trace.eig_labels))
        ]
        + list(sums[i])
        for i, t in enumerate(trace.times)
    )
    return write_csv(path, header, rows)


def gate_matrix_csv(path: Path, m: np.ndarray, labels) -> Path:
    rows = []
    for j, row_lab in enumerate(labels):
        for k, col_lab in enumerate(labels):
            z = m[j, k]
            rows.append([str(row_lab), str(col_lab), abs(z), np.angle(z), z.real, z.imag])
    return write_csv(
        path, ["row_label", "col_label", "abs", "phase_rad", "re", "im"], rows
    )


def breakdown_lines(b: ErrorBreakdown) -> list[str]:
    lines = [
        f"error_1 (1-|a1|^2)     : {b.error_1:.6e}",
        f"error_2 (1-|a2|^2)     : {b.error_2:.6e}",
        f"error_3 (1-|a3|^2)     : {b.error_3:.6e}",
        f"error_4 (phase term)   : {b.error_4:.6e}",
        f"total                  : {b.total:.6e}",
        f"error_1+2+3            : {b.error_123:.6e}",
        f"phi_1 (rad)            : {b.phi_1:+.9f}",
        f"phi_2 (rad)            : {b.phi_2:+.9f}",
        f"process fidelity       : {b.process_fidelity:.9f}",
        f"leakage                : {b.leakage:.6e}",
    ]
    if b.degenerate:
        lines.append("WARNING: degenerate amplitude |a_k| < 1e-6; error_4 set to worst case")
    return lines


def optimization_log_csv(path: Path, log: list[Evaluation], names) -> Path:
    header = ["eval_index", *names, "error_1", "error_2", "error_3", "error_4", "total", "valid"]
    rows = []
    for ev in log:
        e1, e2, e3, e4 = ev.error_terms
        rows.append([ev.index, *ev.params, e1, e2, e3, e4, ev.total, ev.valid])
    return write_csv(path, header, rows)


def scan_csv(path: Path, evals: list[Evaluation], names) -> Path:
    header = [*names, "error_1", "error_2", "error_3", "error_4", "total", "valid"]
    rows = []
    for ev in evals:
        e1, e2, e3, e4 = ev.error_terms
        rows.append([*ev.params, e1, e2, e3, e4, ev.total, ev.valid])
    return write_csv(path, header, rows)


def opt_summary_lines(result: OptResult, names) -> list[str]:
    lines = [
        f"status      : {result.status}",
        f"feasible    : {'yes' if result.feasible else 'no'}",
        f"evaluations : {result.evaluations}",
    ]
    for name, value in zip(names, result.best_params):
        lines.append(f"{name:<22}: {value:.12g}")
    if result.best_breakdown is not None:
        lines.append("")
        lines.extend(breakdown_lines(result.best_breakdown))
    return lines
