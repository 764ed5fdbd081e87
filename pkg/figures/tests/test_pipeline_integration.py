"""Render figures from real simulator output, driving the simulator only
through its command-line interface."""

import shutil
import subprocess

import pandas as pd
import pytest

from czfigures.levels import main as levels_main
from czfigures.levels import plateau_gap_mhz
from czfigures.overlaps import main as overlaps_main
from czfigures.landscape import main as landscape_main

pytestmark = pytest.mark.skipif(
    shutil.which("buscz") is None, reason="buscz CLI not installed"
)


def run(args):
    proc = subprocess.run(args, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr + proc.stdout
    return proc


@pytest.fixture(scope="module")
def pipeline_out(tmp_path_factory):
    out = tmp_path_factory.mktemp("pipeline")
    run(["buscz", "spectrum", "--config", "cz_optimum", "--out", str(out)])
    run(
        ["buscz", "evolve", "--config", "cz_optimum", "--out", str(out), "--overlaps", "--dt", "0.05"]
    )
    return out


def test_levels_figure_from_pipeline(pipeline_out, tmp_path):
    rc = levels_main(
        [
            "--in",
            str(pipeline_out / "levels.csv"),
            str(pipeline_out / "trajectory.csv"),
            "--out",
            str(tmp_path / "levels_fig"),
        ]
    )
    assert rc == 0
    assert (tmp_path / "levels_fig.png").stat().st_size > 0
    gap, _ = plateau_gap_mhz(pd.read_csv(pipeline_out / "levels.csv"))
    assert gap == pytest.approx(9.59, abs=0.02)  # the pulse's undershoot, read back


def test_overlaps_figure_from_pipeline(pipeline_out, tmp_path):
    rc = overlaps_main(
        ["--in", str(pipeline_out / "overlaps.csv"), "--out", str(tmp_path / "ov_fig")]
    )
    assert rc == 0
    assert (tmp_path / "ov_fig.png").stat().st_size > 0
    df = pd.read_csv(pipeline_out / "overlaps.csv")
    assert df["p_200_101"].max() > 0.05  # the 101<->200 exchange is visible
    assert df["p_200_101"].iloc[-1] < 1e-3  # and undone by the end


def test_landscape_figure_from_grid_scan(tmp_path):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text(
        """
[device]
nu_q1_ghz = 6.6
nu_b_ghz = 6.0
nu_q2_ghz = 6.5
eta1_ghz = 0.2
eta2_ghz = 0.2
g_b1_mhz = 75.0
g_b2_mhz = 75.0

[pulse]
type = single_step
undershoot_mhz = 9.59
t_undershoot_ns = 29.1

[numerics]
dt_ns = 0.05

[optimize]
init_undershoot_mhz = 9.5
min_undershoot_mhz = 8.0
max_undershoot_mhz = 11.0
init_t_undershoot_ns = 29.0
min_t_undershoot_ns = 28.0
max_t_undershoot_ns = 30.0
"""
    )
    run(["buscz", "optimize", "--config", str(cfg), "--out", str(tmp_path), "--grid", "3", "3"])
    rc = landscape_main(["--in", str(tmp_path / "scan.csv"), "--out", str(tmp_path / "scan_fig")])
    assert rc == 0
    assert (tmp_path / "scan_fig.png").stat().st_size > 0
