"""Parameterized qubit-frequency trajectories.

Two pulse families are provided, both built from error-function ramps
(cumulative normal with standard deviation sigma):

* the single-step controlled-Z pulse, where qubit 1 idles and qubit 2
  is tuned to a plateau a small undershoot away from the two-excitation
  200/101 resonance and back;
* the three-step SWAP-based comparison sequence, where one qubit is
  tuned onto the bus to transfer its excitation, the other dwells near
  the bus to accumulate conditional phase, and the excitation is moved
  back.

Ramps are evaluated exactly everywhere; the residual erf-tail mismatch
at the window edges is accepted rather than clipped, so trajectories
equal the idle values at t = 0 and t = t_gate only up to the Gaussian
tail of the nearest ramp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import ndtr

from .model import TWO_PI, DeviceParams, rad_to_ghz

# Ramp centers must sit at least this many sigmas inside [0, t_gate].
# Two sigmas admits the useful undershoot durations at t_gate = 45 ns,
# sigma = 3 ns while still keeping the boundary mismatch small.
MIN_CENTER_MARGIN_SIGMA = 2.0


class PulseConfigError(ValueError):
    """Pulse geometry not representable inside the gate window."""


@dataclass(frozen=True)
class ErfRamp:
    """Monotone step between two asymptotes, cumulative-normal shaped.

    ``sigma`` is the standard deviation of the underlying Gaussian; the
    ramp passes through the midpoint of the two values at ``t_center``.
    """

    t_center: float
    sigma: float
    value_before: float
    value_after: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise PulseConfigError("ramp sigma must be positive")

    def value(self, t):
        return self.value_before + (self.value_after - self.value_before) * ndtr(
            (np.asarray(t, dtype=float) - self.t_center) / self.sigma
        )


def erf_ramp_value(ramp: ErfRamp, t):
    """Ramp value at time t (ns); vectorized over t."""
    return ramp.value(t)


@dataclass(frozen=True)
class FrequencyTrajectory:
    """Pair of qubit-frequency functions over [0, t_gate].

    ``nu1``/``nu2`` return cyclic GHz and accept scalars or arrays;
    ``omega1``/``omega2`` are the angular versions used by the
    propagator.
    """

    nu1: Callable
    nu2: Callable
    t_gate: float

    def omega1(self, t):
        return TWO_PI * self.nu1(t)

    def omega2(self, t):
        return TWO_PI * self.nu2(t)

    def sample(self, times):
        """(nu1, nu2) in GHz on the given time grid."""
        times = np.asarray(times, dtype=float)
        return (
            np.broadcast_to(self.nu1(times), times.shape).astype(float),
            np.broadcast_to(self.nu2(times), times.shape).astype(float),
        )


def constant_trajectory(params: DeviceParams, t_gate: float) -> FrequencyTrajectory:
    """Both qubits parked at their idle frequencies (plain wait)."""
    nu1 = rad_to_ghz(params.omega_q1_idle)
    nu2 = rad_to_ghz(params.omega_q2_idle)
    return FrequencyTrajectory(
        nu1=lambda t, v=nu1: np.full_like(np.asarray(t, dtype=float), v),
        nu2=lambda t, v=nu2: np.full_like(np.asarray(t, dtype=float), v),
        t_gate=t_gate,
    )


@dataclass(frozen=True)
class CZPulseSpec:
    """Single-step tune/detune pulse for qubit 2.

    ``undershoot`` is the plateau detuning (nu_101 - nu_200) in MHz;
    ``t_undershoot`` is measured between the central points of the two
    ramps, which are placed symmetrically inside [0, t_gate].
    """

    device: DeviceParams
    undershoot: float  # MHz
    t_undershoot: float  # ns
    sigma_in: float = 3.0  # ns
    sigma_fin: float = 3.0  # ns
    t_gate: float = 45.0  # ns

    def __post_init__(self):
        if self.sigma_in <= 0 or self.sigma_fin <= 0:
            raise PulseConfigError("ramp sigmas must be positive")
        if not (0 < self.t_undershoot < self.t_gate):
            raise PulseConfigError("need 0 < t_undershoot < t_gate")
        c_in, c_fin = self.ramp_centers()
        if c_in < MIN_CENTER_MARGIN_SIGMA * self.sigma_in or c_fin > (
            self.t_gate - MIN_CENTER_MARGIN_SIGMA * self.sigma_fin
        ):
            raise PulseConfigError(
                f"plateau not representable: ramp centers ({c_in:.3f}, {c_fin:.3f}) ns closer than "
                f"{MIN_CENTER_MARGIN_SIGMA:g} sigma to the window edges"
            )

    def ramp_centers(self) -> tuple[float, float]:
        return (
            (self.t_gate - self.t_undershoot) / 2.0,
            (self.t_gate + self.t_undershoot) / 2.0,
        )

    @property
    def nu_q2_plateau(self) -> float:
        """Plateau target for qubit 2 (GHz), nu_q1 - eta_1/2pi + undershoot."""
        return (
            rad_to_ghz(self.device.omega_q1_idle)
            - rad_to_ghz(self.device.eta_1)
            + self.undershoot / 1e3
        )


def cz_trajectory(spec: CZPulseSpec) -> FrequencyTrajectory:
    """Trajectory of the single-step CZ pulse: qubit 1 fixed, qubit 2 dips."""
    dev = spec.device
    nu1_idle = rad_to_ghz(dev.omega_q1_idle)
    nu2_idle = rad_to_ghz(dev.omega_q2_idle)
    c_in, c_fin = spec.ramp_centers()
    down = ErfRamp(c_in, spec.sigma_in, nu2_idle, spec.nu_q2_plateau)
    up = ErfRamp(c_fin, spec.sigma_fin, spec.nu_q2_plateau, nu2_idle)

    def nu2(t, down=down, up=up, idle=nu2_idle):
        # Sum of the two ramps; equals the plateau between them and the
        # idle value outside, up to erf tails.
        return down.value(t) + up.value(t) - up.value_before

    return FrequencyTrajectory(
        nu1=lambda t, v=nu1_idle: np.full_like(np.asarray(t, dtype=float), v),
        nu2=nu2,
        t_gate=spec.t_gate,
    )


@dataclass(frozen=True)
class SwapCZPulseSpec:
    """Three-step SWAP-based sequence: MOVE, conditional-phase dwell, MOVE back.

    One qubit (``move_qubit``) is ramped onto the bus for each MOVE; the
    other is ramped to ``dwell_nu`` between the two MOVEs.  Step layout
    inside [0, t_gate]: first MOVE down-ramp centered at ``lead_in``,
    consecutive ramp centers separated by the dwell durations and
    ``step_gap`` in between steps.
    """

    device: DeviceParams
    move1_dwell: float  # ns between the first MOVE's ramp centers
    dwell_nu: float  # GHz target of the phase-accumulation dwell
    dwell_duration: float  # ns
    move2_dwell: float  # ns
    move_qubit: int = 1
    sigma: float = 0.5  # ns, all six ramps
    t_gate: float = 45.0  # ns
    step_gap: float = 2.0  # ns between consecutive steps' ramp centers
    lead_in: float = 3.0  # ns from window edge to outermost ramp centers
    move_nu: float | None = None  # GHz; None means the bus frequency

    def __post_init__(self):
        if self.move_qubit not in (1, 2):
            raise PulseConfigError("move_qubit must be 1 or 2")
        if self.sigma <= 0:
            raise PulseConfigError("ramp sigma must be positive")
        if min(self.move1_dwell, self.dwell_duration, self.move2_dwell) <= 0:
            raise PulseConfigError("step dwell durations must be positive")
        if self.step_gap < 0:
            raise PulseConfigError("step_gap must be non-negative (steps may not overlap)")
        centers = self.ramp_centers()
        if any(b < a for a, b in zip(centers, centers[1:])):
            raise PulseConfigError("steps out of order")
        if centers[-1] > self.t_gate - self.lead_in:
            raise PulseConfigError(
                f"sequence too long: last ramp center {centers[-1]:.3f} ns exceeds "
                f"t_gate - lead_in = {self.t_gate - self.lead_in:.3f} ns"
            )

    def ramp_centers(self) -> tuple[float, float, float, float, float, float]:
        c_a = self.lead_in
        c_b = c_a + self.move1_dwell
        c_c = c_b + self.step_gap
        c_d = c_c + self.dwell_duration
        c_e = c_d + self.step_gap
        c_f = c_e + self.move2_dwell
        return (c_a, c_b, c_c, c_d, c_e, c_f)


def swap_cz_trajectory(spec: SwapCZPulseSpec) -> FrequencyTrajectory:
    """Piecewise trajectory of the three-step SWAP-based CZ sequence."""
    dev = spec.device
    nu_idle = {
        1: rad_to_ghz(dev.omega_q1_idle),
        2: rad_to_ghz(dev.omega_q2_idle),
    }
    mover = spec.move_qubit
    other = 3 - mover
    move_nu = rad_to_ghz(dev.omega_b) if spec.move_nu is None else spec.move_nu
    c_a, c_b, c_c, c_d, c_e, c_f = spec.ramp_centers()
    sig = spec.sigma

    def nu_mover(t, idle=nu_idle[mover], tgt=move_nu):
        t = np.asarray(t, dtype=float)
        box = (
            ndtr((t - c_a) / sig)
            - ndtr((t - c_b) / sig)
            + ndtr((t - c_e) / sig)
            - ndtr((t - c_f) / sig)
        )
        return idle + (tgt - idle) * box

    def nu_other(t, idle=nu_idle[other], tgt=spec.dwell_nu):
        t = np.asarray(t, dtype=float)
        box = ndtr((t - c_c) / sig) - ndtr((t - c_d) / sig)
        return idle + (tgt - idle) * box

    funcs = {mover: nu_mover, other: nu_other}
    return FrequencyTrajectory(nu1=funcs[1], nu2=funcs[2], t_gate=spec.t_gate)
