"""Shared plumbing for the figure scripts: strict CSV loading, argument
handling and figure saving.

These scripts are pure CSV-to-image translators.  All numbers come from
the simulator's output files; nothing physical is recomputed here, and
input files are never modified.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

FORMATS = ("png", "svg", "pdf")


class SchemaError(ValueError):
    """Input CSV does not carry the expected columns."""


def load_csv(path, required_columns=(), prefix_groups=()) -> pd.DataFrame:
    """Read a CSV and verify it carries the expected schema.

    ``required_columns`` must all be present; for every prefix in
    ``prefix_groups`` at least one column must start with it.
    """
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"input CSV not found: {path}")
    df = pd.read_csv(path)
    missing = [c for c in required_columns if c not in df.columns]
    if missing:
        raise SchemaError(f"{path}: missing columns {', '.join(missing)}")
    for prefix in prefix_groups:
        if not any(c.startswith(prefix) for c in df.columns):
            raise SchemaError(f"{path}: no columns starting with {prefix!r}")
    return df


def make_parser(description: str, n_inputs: str = "1") -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+" if n_inputs != "1" else 1,
        required=True,
        metavar="CSV",
        help="input CSV file(s)",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", choices=FORMATS, default="png", help="image format")
    return parser


def resolve_output(out: str, fmt: str) -> Path:
    """Append the format as suffix unless the output path already has one."""
    path = Path(out)
    if path.suffix.lstrip(".").lower() in FORMATS:
        return path
    return path.with_name(path.name + f".{fmt}")


def save(fig, out: str, fmt: str) -> Path:
    path = resolve_output(out, fmt)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=200, bbox_inches="tight")
    plt.close(fig)
    return path


def apply_style():
    plt.rcParams["axes.grid"] = True
    plt.rcParams["grid.alpha"] = 0.3
    plt.rcParams["font.size"] = 9
    plt.rcParams["lines.linewidth"] = 1.2
    plt.rcParams["legend.fontsize"] = 7
