import numpy as np
import pytest

from buscz.model import DeviceParams

# Canonical device: bare cyclic GHz, both anharmonicities 0.2 GHz,
# both couplings 75 MHz.
CANON = dict(nu_q1=6.6, nu_b=6.0, nu_q2=6.5, eta_1=0.2, eta_2=0.2, g_b1=0.075, g_b2=0.075)


@pytest.fixture(scope="session")
def device():
    return DeviceParams.from_ghz(**CANON)


@pytest.fixture(scope="session")
def device_g0():
    return DeviceParams.from_ghz(**{**CANON, "g_b1": 0.0, "g_b2": 0.0})


def sector_hamiltonians(nu1, nub, nu2, eta1, eta2, g1, g2):
    """Independent hand-built N=1 (3x3) and N=2 (6x6) sector matrices, cyclic GHz.

    Bases: (100, 010, 001) and (200, 110, 101, 020, 011, 002).  Used as a
    brute-force oracle against the full 27-dimensional machinery.
    """
    s2 = np.sqrt(2.0)
    h1 = np.array(
        [
            [nu1, g1, 0.0],
            [g1, nub, g2],
            [0.0, g2, nu2],
        ]
    )
    h2 = np.array(
        [
            [2 * nu1 - eta1, s2 * g1, 0.0, 0.0, 0.0, 0.0],
            [s2 * g1, nu1 + nub, g2, s2 * g1, 0.0, 0.0],
            [0.0, g2, nu1 + nu2, 0.0, g1, 0.0],
            [0.0, s2 * g1, 0.0, 2 * nub, s2 * g2, 0.0],
            [0.0, 0.0, g1, s2 * g2, nub + nu2, s2 * g2],
            [0.0, 0.0, 0.0, 0.0, s2 * g2, 2 * nu2 - eta2],
        ]
    )
    return h1, h2


def sector_oracle_omega_zz(nu1, nub, nu2, eta1, eta2, g1, g2):
    """Omega_ZZ in MHz from the hand-built sectors (eps_000 = 0)."""
    h1, h2 = sector_hamiltonians(nu1, nub, nu2, eta1, eta2, g1, g2)
    labels1 = ["100", "010", "001"]
    labels2 = ["200", "110", "101", "020", "011", "002"]
    eps = {}
    for h, labels in ((h1, labels1), (h2, labels2)):
        w, v = np.linalg.eigh(h)
        for k in range(len(labels)):
            eps[labels[int(np.argmax(np.abs(v[:, k]) ** 2))]] = w[k]
    return (eps["101"] - eps["100"] - eps["001"]) * 1e3
