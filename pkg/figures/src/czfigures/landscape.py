"""Error-landscape figure: the gate-error total over a 2-parameter grid.

Reads the ``scan.csv`` written by a grid scan (first two columns are the
scanned parameters, plus ``total`` and ``valid``).  Totals are colored
on a log scale, invalid points are masked, and the grid minimum is
marked.
"""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm, Normalize

from .common import SchemaError, apply_style, load_csv, make_parser, save


def pivot_grid(df, x_name, y_name):
    xs = np.sort(df[x_name].unique())
    ys = np.sort(df[y_name].unique())
    if len(xs) * len(ys) != len(df):
        raise SchemaError("scan.csv is not a full rectangular grid")
    total = np.full((len(ys), len(xs)), np.nan)
    valid = np.zeros((len(ys), len(xs)), dtype=bool)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    for _, row in df.iterrows():
        i, j = yi[row[y_name]], xi[row[x_name]]
        total[i, j] = row["total"]
        valid[i, j] = bool(row["valid"])
    return xs, ys, total, valid


def render_landscape(df):
    apply_style()
    cols = list(df.columns)
    for req in ("total", "valid"):
        if req not in cols:
            raise SchemaError(f"scan.csv: missing column {req!r}")
    x_name, y_name = cols[0], cols[1]
    xs, ys, total, valid = pivot_grid(df, x_name, y_name)
    masked = np.ma.masked_where(~valid, total)

    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    finite = masked.compressed()
    if finite.size and finite.min() > 0 and finite.max() / max(finite.min(), 1e-300) > 10:
        norm = LogNorm(vmin=finite.min(), vmax=finite.max())
    else:
        # constant or narrow-range scans collapse to a linear scale
        lo = float(finite.min()) if finite.size else 0.0
        hi = float(finite.max()) if finite.size else 1.0
        if hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        norm = Normalize(vmin=lo, vmax=hi)
    mesh = ax.pcolormesh(xs, ys, masked, norm=norm, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="gate-error total")

    if finite.size:
        i, j = np.unravel_index(np.ma.argmin(masked), masked.shape)
        ax.plot(xs[j], ys[i], "r*", ms=12, mec="white", mew=0.5)
        ax.annotate(
            f"min {total[i, j]:.2e} at ({xs[j]:.4g}, {ys[i]:.4g})",
            xy=(xs[j], ys[i]),
            xytext=(0.02, 0.98),
            textcoords="axes fraction",
            va="top",
            fontsize=8,
            color="white",
            arrowprops=dict(arrowstyle="->", color="white", lw=0.8),
        )
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = make_parser("Render the optimization landscape from scan.csv.")
    args = parser.parse_args(argv)
    df = load_csv(args.inputs[0], required_columns=["total", "valid"])
    fig = render_landscape(df)
    path = save(fig, args.out, args.format)
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
