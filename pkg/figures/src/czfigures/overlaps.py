"""Comoving-overlap figure: evolved computational states projected on the
instantaneous eigenbasis.

Reads ``overlaps.csv`` (columns ``p_<eigenlabel>_<logiclabel>`` plus the
completeness sums ``psum_<logiclabel>``).  Only traces that actually
move (range above a threshold) are drawn, which keeps the figure
readable; the completeness sums are overlaid as a sanity band.
"""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import apply_style, load_csv, make_parser, save

ACTIVITY_THRESHOLD = 0.01


def active_traces(df) -> list[str]:
    cols = [c for c in df.columns if c.startswith("p_")]
    moving = [c for c in cols if df[c].max() - df[c].min() > ACTIVITY_THRESHOLD]
    # keep matched pairs (eigenstate == logic state) even when flat
    for c in cols:
        parts = c.split("_")
        if len(parts) == 3 and parts[1] == parts[2] and c not in moving:
            if df[c].iloc[0] > 0.5:
                moving.append(c)
    return sorted(moving)


def render_overlaps(df):
    apply_style()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    t = df["t_ns"]
    for col in active_traces(df):
        _, eig, logic = col.split("_")
        ax.plot(t, df[col], label=f"|<{eig}(t)| U(t) |{logic}>|$^2$")
    for col in (c for c in df.columns if c.startswith("psum_")):
        ax.plot(t, df[col], color="k", lw=0.6, alpha=0.4)
    ax.set_xlabel("time (ns)")
    ax.set_ylabel("overlap probability")
    ax.set_ylim(-0.02, 1.05)
    ax.legend(loc="center right")
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = make_parser("Render comoving-eigenstate overlaps from overlaps.csv.")
    args = parser.parse_args(argv)
    df = load_csv(args.inputs[0], required_columns=["t_ns"], prefix_groups=["p_", "psum_"])
    fig = render_overlaps(df)
    path = save(fig, args.out, args.format)
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
