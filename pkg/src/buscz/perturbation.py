"""Closed-form dispersive estimates: effective couplings and the ZZ rate.

These are the independent cross-checks for the numerics: the
bus-mediated effective coupling of the two-excitation anticrossing, the
corresponding phase-accumulation time, and the fourth-order ZZ rate
whose inverse sets the idling controlled-phase time t_cp = pi / Omega_ZZ.

All formulas are evaluated in cyclic units (every expression here is
homogeneous of degree one in frequency, so feeding nu = omega / 2pi
yields results in cyclic GHz directly); outputs are MHz and ns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DeviceParams, rad_to_ghz

# Do not evaluate closer than this to any resonant denominator; the
# dispersive expressions are meaningless there.
SINGULARITY_GUARD_GHZ = 1e-3


class SingularEstimateError(ValueError):
    """A resonant denominator factor makes the dispersive formula invalid."""


def _guard(name: str, value_ghz: float):
    if abs(value_ghz) < SINGULARITY_GUARD_GHZ:
        raise SingularEstimateError(
            f"denominator factor {name} = {value_ghz:.6g} GHz is within "
            f"{SINGULARITY_GUARD_GHZ * 1e3:g} MHz of resonance"
        )


def g_eff_100_001(params: DeviceParams, omega_q1: float) -> float:
    """Bus-mediated 100<->001 coupling, 2 g_b^2 w_b / (w_q1^2 - w_b^2), in MHz.

    ``omega_q1`` (rad/ns) is the qubit frequency at which the
    near-resonant exchange takes place.  With unequal couplings the
    g_b^2 factor generalizes to g_b1 * g_b2.
    """
    nu_q1 = rad_to_ghz(omega_q1)
    nu_b = rad_to_ghz(params.omega_b)
    _guard("nu_q1 - nu_b", nu_q1 - nu_b)
    g2 = rad_to_ghz(params.g_b1) * rad_to_ghz(params.g_b2)
    return 2.0 * g2 * nu_b / (nu_q1**2 - nu_b**2) * 1e3


def g_eff_200_101(params: DeviceParams, omega_q1: float) -> float:
    """Effective 200<->101 coupling, sqrt(2) times the 100<->001 value, MHz."""
    return np.sqrt(2.0) * g_eff_100_001(params, omega_q1)


def t_2pi(params: DeviceParams, omega_q1: float) -> float:
    """Full phase-accumulation time pi / g_eff^{200<->101} in ns."""
    g_mhz = g_eff_200_101(params, omega_q1)
    if g_mhz == 0:
        return np.inf
    return 1.0 / (2.0 * abs(g_mhz) / 1e3)


def omega_zz_4th(params: DeviceParams, omega1: float, omega2: float) -> float:
    """Fourth-order ZZ rate in cyclic MHz.

    Vanishes for harmonic components (eta = 0) and is symmetric under
    interchanging the two qubits together with their anharmonicities and
    couplings.  Raises :class:`SingularEstimateError` when any of the
    four denominator factors is near zero, naming the offending factor.
    """
    w1 = rad_to_ghz(omega1)
    w2 = rad_to_ghz(omega2)
    wb = rad_to_ghz(params.omega_b)
    e1 = rad_to_ghz(params.eta_1)
    e2 = rad_to_ghz(params.eta_2)
    g1 = rad_to_ghz(params.g_b1)
    g2 = rad_to_ghz(params.g_b2)

    _guard("omega1 - omega_b", w1 - wb)
    _guard("omega2 - omega_b", w2 - wb)
    _guard("omega1 - (omega2 - eta2)", w1 - (w2 - e2))
    _guard("(omega1 - eta1) - omega2", (w1 - e1) - w2)

    braces = (
        w1 * e1 * (2 * wb - w1 - e2)
        + w2 * e2 * (2 * wb - w2 - e1)
        - wb * (wb * (e1 + e2) - 2 * e1 * e2)
    )
    denom = (w1 - wb) ** 2 * (w2 - wb) ** 2 * (w1 - (w2 - e2)) * ((w1 - e1) - w2)
    return 2.0 * g1**2 * g2**2 * braces / denom * 1e3


def t_cp(params: DeviceParams, omega1: float, omega2: float) -> float:
    """Idling controlled-phase time pi / |Omega_ZZ| in ns (inf at zero rate)."""
    ozz_mhz = omega_zz_4th(params, omega1, omega2)
    if ozz_mhz == 0:
        return np.inf
    return 1.0 / (2.0 * abs(ozz_mhz) / 1e3)


@dataclass(frozen=True)
class PerturbativeEstimates:
    """Bundle of the closed-form numbers for one device configuration."""

    g_eff_100_001: float  # MHz
    g_eff_200_101: float  # MHz
    t_2pi: float  # ns
    omega_zz_4th: float  # MHz
    t_cp: float  # ns

    def lines(self) -> list[str]:
        return [
            f"g_eff 100<->001      : {self.g_eff_100_001:12.6f} MHz",
            f"g_eff 200<->101      : {self.g_eff_200_101:12.6f} MHz",
            f"t_2pi (200<->101)    : {self.t_2pi:12.6f} ns",
            f"Omega_ZZ (4th order) : {self.omega_zz_4th:12.6f} MHz",
            f"t_cp = pi/Omega_ZZ   : {self.t_cp:12.6f} ns",
        ]


def estimates(
    params: DeviceParams,
    omega_q1: float | None = None,
    omega1: float | None = None,
    omega2: float | None = None,
) -> PerturbativeEstimates:
    """All estimates at once; defaults evaluate at the idle frequencies."""
    if omega_q1 is None:
        omega_q1 = params.omega_q1_idle
    if omega1 is None:
        omega1 = params.omega_q1_idle
    if omega2 is None:
        omega2 = params.omega_q2_idle
    return PerturbativeEstimates(
        g_eff_100_001=g_eff_100_001(params, omega_q1),
        g_eff_200_101=g_eff_200_101(params, omega_q1),
        t_2pi=t_2pi(params, omega_q1),
        omega_zz_4th=omega_zz_4th(params, omega1, omega2),
        t_cp=t_cp(params, omega1, omega2),
    )
