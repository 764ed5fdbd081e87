"""Level-diagram figure: one- and two-excitation frequencies along the pulse.

Reads the simulator's ``levels.csv`` (dressed ``nu_<label>_ghz`` and bare
``bare_nu_<label>_ghz`` columns) and optionally ``trajectory.csv`` for a
control-trajectory panel.  Dressed levels are drawn solid, bare levels
dashed.  The minimum bare 101-200 separation (the pulse's undershoot) is
computed from the data and annotated; when the two levels approach
within 50 MHz an inset zooms into the anticrossing region.
"""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt
import numpy as np

from .common import apply_style, load_csv, make_parser, save

SINGLE = ("100", "010", "001")
DOUBLE = ("200", "110", "101", "020", "011", "002")

COLORS = {
    "100": "tab:blue",
    "010": "tab:orange",
    "001": "tab:green",
    "200": "tab:red",
    "110": "tab:purple",
    "101": "tab:brown",
    "020": "tab:pink",
    "011": "tab:gray",
    "002": "tab:olive",
}


def plateau_gap_mhz(levels) -> tuple[float, float]:
    """Minimum bare 101-200 separation (MHz) and the time it occurs (ns)."""
    gap = levels["bare_nu_101_ghz"].to_numpy() - levels["bare_nu_200_ghz"].to_numpy()
    i = int(np.argmin(np.abs(gap)))
    return float(abs(gap[i]) * 1e3), float(levels["t_ns"].to_numpy()[i])


def render_levels(levels, trajectory=None):
    """Build the figure; returns (figure, annotated gap in MHz)."""
    apply_style()
    n_rows = 3 if trajectory is not None else 2
    heights = [2.2, 2.2, 1.0][:n_rows]
    fig, axes = plt.subplots(
        n_rows, 1, figsize=(6.4, 2.1 * n_rows), sharex=True, height_ratios=heights
    )
    t = levels["t_ns"].to_numpy()

    ax2 = axes[0]
    for lab in DOUBLE:
        ax2.plot(t, levels[f"nu_{lab}_ghz"], color=COLORS[lab], label=lab)
        ax2.plot(t, levels[f"bare_nu_{lab}_ghz"], color=COLORS[lab], ls="--", lw=0.8, alpha=0.7)
    ax2.set_ylabel("two-excitation\nfrequency (GHz)")
    ax2.legend(ncol=3, loc="lower right")

    gap_mhz, t_gap = plateau_gap_mhz(levels)
    mid = 0.5 * (
        levels["bare_nu_101_ghz"].to_numpy()[np.argmin(np.abs(t - t_gap))]
        + levels["bare_nu_200_ghz"].to_numpy()[np.argmin(np.abs(t - t_gap))]
    )
    ax2.annotate(
        f"min bare 101−200 gap: {gap_mhz:.2f} MHz",
        xy=(t_gap, mid),
        xytext=(0.02, 0.96),
        textcoords="axes fraction",
        va="top",
        arrowprops=dict(arrowstyle="->", lw=0.8),
        fontsize=8,
    )
    if gap_mhz < 50.0:
        inset = ax2.inset_axes([0.58, 0.55, 0.4, 0.42])
        for lab in ("200", "101"):
            inset.plot(t, levels[f"nu_{lab}_ghz"], color=COLORS[lab])
            inset.plot(t, levels[f"bare_nu_{lab}_ghz"], color=COLORS[lab], ls="--", lw=0.7)
        pad = 4 * gap_mhz / 1e3 + 0.005
        inset.set_ylim(mid - pad, mid + pad)
        inset.tick_params(labelsize=6)
        inset.set_title("200/101 anticrossing", fontsize=6)
        inset.grid(alpha=0.2)

    ax1 = axes[1]
    for lab in SINGLE:
        ax1.plot(t, levels[f"nu_{lab}_ghz"], color=COLORS[lab], label=lab)
        ax1.plot(t, levels[f"bare_nu_{lab}_ghz"], color=COLORS[lab], ls="--", lw=0.8, alpha=0.7)
    ax1.set_ylabel("one-excitation\nfrequency (GHz)")
    ax1.legend(ncol=3, loc="lower right")

    if trajectory is not None:
        ax0 = axes[2]
        ax0.plot(trajectory["t_ns"], trajectory["nu_q1_ghz"], label="qubit 1")
        ax0.plot(trajectory["t_ns"], trajectory["nu_q2_ghz"], label="qubit 2")
        ax0.set_ylabel("control\n(GHz)")
        ax0.legend(ncol=2, loc="lower right")

    axes[-1].set_xlabel("time (ns)")
    fig.align_ylabels(axes)
    fig.tight_layout()
    return fig, gap_mhz


def main(argv=None) -> int:
    parser = make_parser(
        "Render the level diagram from levels.csv (and, optionally, "
        "trajectory.csv as a second --in argument).",
        n_inputs="+",
    )
    args = parser.parse_args(argv)
    levels = load_csv(
        args.inputs[0],
        required_columns=["t_ns", "nu_101_ghz", "nu_200_ghz", "bare_nu_101_ghz", "bare_nu_200_ghz"],
        prefix_groups=["nu_", "bare_nu_"],
    )
    trajectory = None
    if len(args.inputs) > 1:
        trajectory = load_csv(args.inputs[1], required_columns=["t_ns", "nu_q1_ghz", "nu_q2_ghz"])
    fig, gap = render_levels(levels, trajectory)
    path = save(fig, args.out, args.format)
    print(f"wrote {path} (annotated gap {gap:.2f} MHz)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
