import numpy as np
import pytest

from buscz.model import rad_to_ghz
from buscz.pulses import (
    CZPulseSpec,
    ErfRamp,
    PulseConfigError,
    SwapCZPulseSpec,
    constant_trajectory,
    cz_trajectory,
    erf_ramp_value,
    swap_cz_trajectory,
)

# Standard normal CDF at 1, frozen from quadrature of the Gaussian pdf.
PHI_1 = 0.8413447460685429


def test_ramp_midpoint():
    ramp = ErfRamp(t_center=10.0, sigma=3.0, value_before=6.5, value_after=6.40959)
    assert erf_ramp_value(ramp, 10.0) == pytest.approx((6.5 + 6.40959) / 2, abs=1e-14)


def test_ramp_tail():
    ramp = ErfRamp(t_center=30.0, sigma=3.0, value_before=1.0, value_after=2.0)
    assert erf_ramp_value(ramp, 30.0 - 6 * 3.0) == pytest.approx(1.0, abs=1e-8)
    assert erf_ramp_value(ramp, 30.0 + 6 * 3.0) == pytest.approx(2.0, abs=1e-8)


def test_ramp_value_one_sigma_in():
    ramp = ErfRamp(t_center=10.0, sigma=3.0, value_before=6.5, value_after=6.40959)
    expected = 6.5 + (6.40959 - 6.5) * PHI_1  # = 6.423934021507943
    assert erf_ramp_value(ramp, 13.0) == pytest.approx(expected, abs=1e-12)
    assert erf_ramp_value(ramp, 13.0) == pytest.approx(6.423934021507943, abs=1e-12)


def test_ramp_monotone():
    ramp = ErfRamp(t_center=5.0, sigma=2.0, value_before=0.0, value_after=1.0)
    t = np.linspace(-20, 30, 2001)
    v = erf_ramp_value(ramp, t)
    assert np.all(np.diff(v) >= 0)


def test_ramp_requires_positive_sigma():
    with pytest.raises(PulseConfigError):
        ErfRamp(t_center=0.0, sigma=0.0, value_before=0.0, value_after=1.0)


def test_cz_plateau_frequency(device):
    spec = CZPulseSpec(device=device, undershoot=9.59, t_undershoot=29.1)
    assert spec.nu_q2_plateau == pytest.approx(6.40959, abs=1e-12)


def test_cz_undershoot_equal_idle_gap_is_constant(device):
    # idle detuning nu_101 - nu_200 is 100 MHz; with that undershoot the
    # plateau equals the idle frequency and nothing moves
    spec = CZPulseSpec(device=device, undershoot=100.0, t_undershoot=29.1)
    traj = cz_trajectory(spec)
    t = np.linspace(0, 45, 181)
    assert np.allclose(traj.nu2(t), 6.5, atol=1e-12)
    assert np.allclose(traj.nu1(t), 6.6, atol=1e-14)


def test_cz_boundaries_near_idle(device):
    spec = CZPulseSpec(device=device, undershoot=9.59, t_undershoot=29.1)
    traj = cz_trajectory(spec)
    # ramp centers sit 2.65 sigma inside the window; the erf tail there
    # leaves a few-1e-4 GHz mismatch
    assert abs(float(traj.nu2(0.0)) - 6.5) < 5e-4
    assert abs(float(traj.nu2(45.0)) - 6.5) < 5e-4


def test_boundary_restoration_with_deep_margins(device):
    # centers >= 4.75 sigma inside the window keep the boundary mismatch
    # below 1e-6 GHz for this excursion (~90 MHz)
    spec = CZPulseSpec(device=device, undershoot=9.59, t_undershoot=15.0, t_gate=45.0)
    c_in, c_fin = spec.ramp_centers()
    assert min(c_in, spec.t_gate - c_fin) >= 4.75 * spec.sigma_in
    traj = cz_trajectory(spec)
    assert abs(float(traj.nu2(0.0)) - 6.5) < 1e-6
    assert abs(float(traj.nu2(45.0)) - 6.5) < 1e-6
    assert abs(float(traj.nu1(0.0)) - 6.6) == 0.0


def test_plateau_accuracy_at_midpoint(device):
    # with the plateau long enough that erf tails are negligible at its
    # midpoint, the bare 101-200 gap there equals the undershoot
    spec = CZPulseSpec(device=device, undershoot=9.59, t_undershoot=36.0, sigma_in=3.0, sigma_fin=3.0, t_gate=60.0)
    traj = cz_trajectory(spec)
    t_mid = sum(spec.ramp_centers()) / 2
    nu2 = float(traj.nu2(t_mid))
    nu1 = float(traj.nu1(t_mid))
    gap_ghz = (nu1 + nu2) - (2 * nu1 - rad_to_ghz(device.eta_1))
    assert gap_ghz == pytest.approx(9.59e-3, abs=1e-9)


def test_cz_geometry_rejected_when_centers_too_close_to_edges(device):
    with pytest.raises(PulseConfigError):
        CZPulseSpec(device=device, undershoot=9.59, t_undershoot=40.0, t_gate=45.0)
    with pytest.raises(PulseConfigError):
        CZPulseSpec(device=device, undershoot=9.59, t_undershoot=46.0, t_gate=45.0)


def test_constant_trajectory(device):
    traj = constant_trajectory(device, 45.0)
    nu1, nu2 = traj.sample(np.linspace(0, 45, 11))
    assert np.allclose(nu1, 6.6, atol=1e-12)
    assert np.allclose(nu2, 6.5, atol=1e-12)


def test_swap_zero_excursion_constant(device):
    spec = SwapCZPulseSpec(
        device=device,
        move1_dwell=10.0,
        dwell_nu=6.5,
        dwell_duration=14.0,
        move2_dwell=10.0,
        move_nu=6.6,  # mover stays at its idle frequency
    )
    traj = swap_cz_trajectory(spec)
    t = np.linspace(0, 45, 91)
    assert np.allclose(traj.nu1(t), 6.6, atol=1e-14)
    assert np.allclose(traj.nu2(t), 6.5, atol=1e-14)


def test_swap_step_ordering_violated(device):
    with pytest.raises(PulseConfigError):
        SwapCZPulseSpec(
            device=device,
            move1_dwell=10.0,
            dwell_nu=6.2,
            dwell_duration=-1.0,
            move2_dwell=10.0,
        )
    with pytest.raises(PulseConfigError):
        SwapCZPulseSpec(
            device=device,
            move1_dwell=10.0,
            dwell_nu=6.2,
            dwell_duration=14.0,
            move2_dwell=10.0,
            step_gap=-0.5,
        )


def test_swap_sequence_must_fit_gate_window(device):
    with pytest.raises(PulseConfigError):
        SwapCZPulseSpec(
            device=device,
            move1_dwell=15.0,
            dwell_nu=6.2,
            dwell_duration=20.0,
            move2_dwell=15.0,
            t_gate=45.0,
        )


def test_swap_trajectory_shape(device):
    spec = SwapCZPulseSpec(
        device=device, move1_dwell=10.0, dwell_nu=6.2, dwell_duration=14.0, move2_dwell=10.0
    )
    traj = swap_cz_trajectory(spec)
    c = spec.ramp_centers()
    # mover parked on the bus in the middle of each MOVE dwell
    assert float(traj.nu1((c[0] + c[1]) / 2)) == pytest.approx(6.0, abs=2e-3)
    assert float(traj.nu1((c[4] + c[5]) / 2)) == pytest.approx(6.0, abs=2e-3)
    # other qubit parked at the dwell frequency mid-dwell
    assert float(traj.nu2((c[2] + c[3]) / 2)) == pytest.approx(6.2, abs=2e-3)
    # boundaries near idle
    assert float(traj.nu1(0.0)) == pytest.approx(6.6, abs=1e-2)
    assert float(traj.nu2(45.0)) == pytest.approx(6.5, abs=1e-2)
