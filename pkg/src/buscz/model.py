"""Truncated qubit/bus/qubit model: Hilbert space, operators, RWA Hamiltonian.

The device is a three-component chain q1 -- bus -- q2.  Each qubit keeps
three levels, the bus keeps a configurable number, and the rotating-wave
coupling conserves the total excitation number, so the Hamiltonian is
block diagonal over excitation sectors.

Internally everything is in angular frequency (rad/ns).  Configuration
files and reports use cyclic GHz, nu = omega / 2pi; with time in ns the
two are related by a bare factor of 2pi.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * np.pi


def ghz_to_rad(nu_ghz: float) -> float:
    """Cyclic GHz -> angular rad/ns."""
    return TWO_PI * nu_ghz


def rad_to_ghz(omega: float) -> float:
    """Angular rad/ns -> cyclic GHz."""
    return omega / TWO_PI


class ModelError(ValueError):
    """Invalid device parameters or state labels."""


class BareLabel(NamedTuple):
    """Occupation numbers (qubit-1, bus, qubit-2) of a product basis state."""

    n1: int
    nb: int
    n2: int

    def __str__(self) -> str:
        return f"{self.n1}{self.nb}{self.n2}"


@dataclass(frozen=True)
class DeviceParams:
    """Static device record.

    All frequencies, anharmonicities and couplings are angular (rad/ns).
    Use :meth:`from_ghz` to construct from the cyclic-GHz numbers quoted
    in configuration files.  Anharmonicities are entered positive and
    subtracted from the doubly-excited qubit level.
    """

    omega_q1_idle: float
    omega_q2_idle: float
    omega_b: float
    eta_1: float
    eta_2: float
    g_b1: float
    g_b2: float
    qubit_levels: int = 3
    bus_levels: int = 3

    def __post_init__(self):
        if self.qubit_levels != 3:
            raise ModelError("qubit_levels must be exactly 3 (qubit operators are 3x3)")
        if self.bus_levels < 3:
            raise ModelError("bus_levels must be >= 3")
        for name in ("omega_q1_idle", "omega_q2_idle", "omega_b"):
            if getattr(self, name) <= 0:
                raise ModelError(f"{name} must be strictly positive")
        if not (0 < self.eta_1 < self.omega_q1_idle):
            raise ModelError("eta_1 must satisfy 0 < eta_1 < omega_q1_idle")
        if not (0 < self.eta_2 < self.omega_q2_idle):
            raise ModelError("eta_2 must satisfy 0 < eta_2 < omega_q2_idle")
        if not (0 <= self.g_b1 < abs(self.omega_q1_idle - self.omega_b)):
            raise ModelError("g_b1 must satisfy 0 <= g_b1 < |omega_q1_idle - omega_b| (dispersive idle)")
        if not (0 <= self.g_b2 < abs(self.omega_q2_idle - self.omega_b)):
            raise ModelError("g_b2 must satisfy 0 <= g_b2 < |omega_q2_idle - omega_b| (dispersive idle)")

    @classmethod
    def from_ghz(
        cls,
        nu_q1: float,
        nu_b: float,
        nu_q2: float,
        eta_1: float,
        eta_2: float,
        g_b1: float,
        g_b2: float,
        bus_levels: int = 3,
    ) -> "DeviceParams":
        """Build from cyclic-GHz values (couplings also in GHz, i.e. g/2pi)."""
        return cls(
            omega_q1_idle=ghz_to_rad(nu_q1),
            omega_q2_idle=ghz_to_rad(nu_q2),
            omega_b=ghz_to_rad(nu_b),
            eta_1=ghz_to_rad(eta_1),
            eta_2=ghz_to_rad(eta_2),
            g_b1=ghz_to_rad(g_b1),
            g_b2=ghz_to_rad(g_b2),
            bus_levels=bus_levels,
        )

    def swapped(self) -> "DeviceParams":
        """Device with qubit 1 and qubit 2 roles interchanged."""
        return DeviceParams(
            omega_q1_idle=self.omega_q2_idle,
            omega_q2_idle=self.omega_q1_idle,
            omega_b=self.omega_b,
            eta_1=self.eta_2,
            eta_2=self.eta_1,
            g_b1=self.g_b2,
            g_b2=self.g_b1,
            bus_levels=self.bus_levels,
        )


class HilbertSpace:
    """Bijection between flat indices and bare labels, lexicographic in (n1, nb, n2)."""

    def __init__(self, bus_levels: int):
        if bus_levels < 3:
            raise ModelError("bus_levels must be >= 3")
        self.bus_levels = bus_levels
        self.dimension = 3 * bus_levels * 3
        self.labels = [
            BareLabel(n1, nb, n2)
            for n1 in range(3)
            for nb in range(bus_levels)
            for n2 in range(3)
        ]
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.excitation = np.array([lab.n1 + lab.nb + lab.n2 for lab in self.labels])

    def index(self, label: BareLabel) -> int:
        lab = BareLabel(*label)
        if lab not in self._index:
            raise ModelError(f"label {lab} outside truncated space (bus_levels={self.bus_levels})")
        return self._index[lab]

    def label(self, index: int) -> BareLabel:
        return self.labels[index]

    def labels_with_excitation(self, n: int) -> list[BareLabel]:
        return [lab for lab in self.labels if lab.n1 + lab.nb + lab.n2 == n]


def build_space(params: DeviceParams) -> HilbertSpace:
    """Truncated product space for the given device."""
    return HilbertSpace(params.bus_levels)


def lowering_qubit() -> np.ndarray:
    """3x3 qubit lowering operator (1 and sqrt(2) on the superdiagonal)."""
    sm = np.zeros((3, 3))
    sm[0, 1] = 1.0
    sm[1, 2] = np.sqrt(2.0)
    return sm


def lowering_bus(bus_levels: int) -> np.ndarray:
    """Bus annihilation operator, sqrt(n) convention."""
    return np.diag(np.sqrt(np.arange(1.0, bus_levels)), 1)


def _kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


class HamiltonianTerms(NamedTuple):
    """Constant matrices such that H(w1, w2) = static + w1 * number_q1 + w2 * number_q2."""

    static: np.ndarray
    number_q1: np.ndarray
    number_q2: np.ndarray


@functools.lru_cache(maxsize=32)
def hamiltonian_terms(params: DeviceParams) -> HamiltonianTerms:
    """Precompute the control-independent decomposition of the RWA Hamiltonian.

    The qubit Hamiltonian diag(0, w, 2w - eta) splits into w * diag(0, 1, 2)
    minus the constant eta * diag(0, 0, 1), so the full H is affine in the
    two control frequencies.  The propagator and sweeps rely on this to
    assemble thousands of snapshots cheaply.
    """
    nb = params.bus_levels
    sm = lowering_qubit()
    sp = sm.conj().T
    a = lowering_bus(nb)
    ad = a.conj().T
    i3 = np.eye(3)
    ib = np.eye(nb)
    nq = np.diag([0.0, 1.0, 2.0])
    d2 = np.diag([0.0, 0.0, 1.0])

    static = params.omega_b * _kron3(i3, np.diag(np.arange(nb, dtype=float)), i3)
    static = static - params.eta_1 * _kron3(d2, ib, i3) - params.eta_2 * _kron3(i3, ib, d2)
    static = static + params.g_b1 * (_kron3(sm, ad, i3) + _kron3(sp, a, i3))
    static = static + params.g_b2 * (_kron3(i3, ad, sm) + _kron3(i3, a, sp))
    return HamiltonianTerms(
        static=static.astype(complex),
        number_q1=_kron3(nq, ib, i3),
        number_q2=_kron3(i3, ib, nq),
    )


def assemble_hamiltonian(params: DeviceParams, omega1: float, omega2: float) -> np.ndarray:
    """RWA Hamiltonian snapshot at qubit frequencies (omega1, omega2), rad/ns.

    Hermitian by construction and block diagonal over total excitation
    number (all matrix elements between different-excitation labels are
    exactly zero).
    """
    if omega1 <= 0 or omega2 <= 0:
        raise ModelError("qubit frequencies must be strictly positive")
    terms = hamiltonian_terms(params)
    return terms.static + omega1 * terms.number_q1 + omega2 * terms.number_q2


def assemble_hamiltonian_batch(
    params: DeviceParams, omega1: np.ndarray, omega2: np.ndarray
) -> np.ndarray:
    """Stack of Hamiltonian snapshots, shape (len(omega1), dim, dim)."""
    omega1 = np.asarray(omega1, dtype=float)
    omega2 = np.asarray(omega2, dtype=float)
    if omega1.shape != omega2.shape or omega1.ndim != 1:
        raise ModelError("omega1/omega2 must be 1-d arrays of equal length")
    if np.any(omega1 <= 0) or np.any(omega2 <= 0):
        raise ModelError("qubit frequencies must be strictly positive")
    terms = hamiltonian_terms(params)
    return (
        terms.static[None, :, :]
        + omega1[:, None, None] * terms.number_q1[None, :, :]
        + omega2[:, None, None] * terms.number_q2[None, :, :]
    )


def bare_frequency(
    label: BareLabel, omega1: float, omega2: float, params: DeviceParams
) -> float:
    """Diagonal element of H at a bare label, in cyclic GHz."""
    space = build_space(params)
    lab = BareLabel(*label)
    space.index(lab)  # validates
    omega = (
        lab.n1 * omega1
        - (lab.n1 == 2) * params.eta_1
        + lab.nb * params.omega_b
        + lab.n2 * omega2
        - (lab.n2 == 2) * params.eta_2
    )
    return rad_to_ghz(omega)
