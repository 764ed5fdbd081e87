import numpy as np
import pytest

RNG = np.random.default_rng(4)

SINGLE = ("100", "010", "001")
DOUBLE = ("200", "110", "101", "020", "011", "002")


def synthetic_levels_csv(path, n=41, undershoot_ghz=0.00959):
    """Schema-true levels.csv with a 101 dip toward 200 mid-pulse."""
    t = np.linspace(0.0, 45.0, n)
    bare = {
        "100": np.full(n, 6.6),
        "010": np.full(n, 6.0),
        "001": 6.5 - 0.095 * np.exp(-((t - 22.5) ** 2) / 60.0),
        "200": np.full(n, 13.0),
        "110": np.full(n, 12.6),
        "020": np.full(n, 12.0),
    }
    bare["101"] = bare["100"] + bare["001"]
    bare["011"] = bare["010"] + bare["001"]
    bare["002"] = 2 * bare["001"] - 0.2
    # cap the dip so the minimum bare gap equals the undershoot
    bare["101"] = np.maximum(bare["101"], 13.0 + undershoot_ghz)
    dressed = {k: v + 0.02 * np.sin(0.1 * t) * 0.1 for k, v in bare.items()}
    header = (
        ["t_ns"]
        + [f"nu_{lab}_ghz" for lab in SINGLE + DOUBLE]
        + [f"bare_nu_{lab}_ghz" for lab in SINGLE + DOUBLE]
    )
    rows = [header]
    for i in range(n):
        rows.append(
            [f"{t[i]:.6g}"]
            + [f"{dressed[lab][i]:.12g}" for lab in SINGLE + DOUBLE]
            + [f"{bare[lab][i]:.12g}" for lab in SINGLE + DOUBLE]
        )
    path.write_text("\n".join(",".join(map(str, r)) for r in rows) + "\n")
    return path


def synthetic_trajectory_csv(path, n=41):
    t = np.linspace(0.0, 45.0, n)
    nu2 = 6.5 - 0.095 * np.exp(-((t - 22.5) ** 2) / 60.0)
    lines = ["t_ns,nu_q1_ghz,nu_q2_ghz"]
    lines += [f"{t[i]:.6g},6.6,{nu2[i]:.12g}" for i in range(n)]
    path.write_text("\n".join(lines) + "\n")
    return path


def synthetic_overlaps_csv(path, n=41):
    t = np.linspace(0.0, 45.0, n)
    p_exchange = 0.12 * np.sin(np.pi * t / 45.0) ** 2
    lines = ["t_ns,p_101_101,p_200_101,p_100_100,psum_101,psum_100"]
    for i in range(n):
        lines.append(
            f"{t[i]:.6g},{1 - p_exchange[i]:.12g},{p_exchange[i]:.12g},1,1,1"
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def synthetic_scan_csv(path, nx=7, ny=7, constant=False):
    us = np.linspace(7.0, 12.0, nx)
    ts = np.linspace(27.0, 31.0, ny)
    lines = ["undershoot_mhz,t_undershoot_ns,error_1,error_2,error_3,error_4,total,valid"]
    for u in us:
        for t in ts:
            total = 1e-4 if constant else 1e-4 + 0.01 * ((u - 9.59) ** 2 + (t - 29.1) ** 2)
            lines.append(f"{u:.12g},{t:.12g},0,0,0,{total:.12g},{total:.12g},1")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def levels_csv(tmp_path):
    return synthetic_levels_csv(tmp_path / "levels.csv")


@pytest.fixture
def trajectory_csv(tmp_path):
    return synthetic_trajectory_csv(tmp_path / "trajectory.csv")


@pytest.fixture
def overlaps_csv(tmp_path):
    return synthetic_overlaps_csv(tmp_path / "overlaps.csv")


@pytest.fixture
def scan_csv(tmp_path):
    return synthetic_scan_csv(tmp_path / "scan.csv")
