import numpy as np
import pytest

from buscz.model import DeviceParams, ghz_to_rad
from buscz.perturbation import (
    SingularEstimateError,
    estimates,
    g_eff_100_001,
    g_eff_200_101,
    omega_zz_4th,
    t_2pi,
    t_cp,
)

from conftest import CANON


def test_g_eff_first_order_value(device):
    # 2 * 0.075^2 * 6.0 / (6.4^2 - 6.0^2) GHz = 13.61 MHz
    val = g_eff_100_001(device, ghz_to_rad(6.4))
    assert val == pytest.approx(13.6088709677, abs=1e-6)


def test_g_eff_sqrt2_relation_and_value(device):
    w = ghz_to_rad(6.4)
    assert g_eff_200_101(device, w) == pytest.approx(np.sqrt(2.0) * g_eff_100_001(device, w), rel=1e-15)
    assert g_eff_200_101(device, w) == pytest.approx(19.2458498912, abs=1e-6)
    assert abs(g_eff_200_101(device, w) - 19.2) <= 0.1


def test_g_eff_zero_coupling(device_g0):
    assert g_eff_100_001(device_g0, ghz_to_rad(6.4)) == 0.0
    assert g_eff_200_101(device_g0, ghz_to_rad(6.4)) == 0.0


def test_g_eff_sign_below_bus(device):
    assert g_eff_100_001(device, ghz_to_rad(5.6)) < 0.0


def test_g_eff_quadratic_in_coupling(device):
    doubled = DeviceParams.from_ghz(**{**CANON, "g_b1": 0.15, "g_b2": 0.15})
    w = ghz_to_rad(6.4)
    assert g_eff_200_101(doubled, w) == pytest.approx(4 * g_eff_200_101(device, w), rel=1e-12)


def test_g_eff_rejects_resonance(device):
    with pytest.raises(SingularEstimateError):
        g_eff_100_001(device, device.omega_b)


def test_t_2pi_value(device):
    # 1 / (2 * 0.0192458 GHz) ~ 26 ns
    val = t_2pi(device, ghz_to_rad(6.4))
    assert val == pytest.approx(25.9796269236, abs=1e-6)
    assert abs(val - 26.0) <= 0.5
    # half the coupling -> quarter the effective rate -> 4x the time
    halved = DeviceParams.from_ghz(**{**CANON, "g_b1": 0.0375, "g_b2": 0.0375})
    assert t_2pi(halved, ghz_to_rad(6.4)) == pytest.approx(4 * val, rel=1e-12)
    assert t_2pi(DeviceParams.from_ghz(**{**CANON, "g_b1": 0.0, "g_b2": 0.0}), ghz_to_rad(6.4)) == np.inf


def test_omega_zz_4th_idle_value(device):
    # frozen from an independent high-precision evaluation of the
    # fourth-order expression at the canonical idle point
    val = omega_zz_4th(device, device.omega_q1_idle, device.omega_q2_idle)
    assert val == pytest.approx(3.890625, abs=1e-9)


def test_t_cp_idle_value(device):
    val = t_cp(device, device.omega_q1_idle, device.omega_q2_idle)
    assert val == pytest.approx(128.5140562249, abs=1e-6)
    assert 123.0 <= val <= 137.0


def test_omega_zz_4th_zero_cases(device_g0, device):
    assert omega_zz_4th(device_g0, device_g0.omega_q1_idle, device_g0.omega_q2_idle) == 0.0
    harmonic = DeviceParams.from_ghz(**{**CANON, "eta_1": 1e-9, "eta_2": 1e-9})
    val = omega_zz_4th(harmonic, harmonic.omega_q1_idle, harmonic.omega_q2_idle)
    assert abs(val) < 1e-6  # eta -> 0 kills the numerator braces


def test_omega_zz_4th_scaling_with_g(device):
    v75 = omega_zz_4th(device, device.omega_q1_idle, device.omega_q2_idle)
    dev25 = DeviceParams.from_ghz(**{**CANON, "g_b1": 0.025, "g_b2": 0.025})
    v25 = omega_zz_4th(dev25, dev25.omega_q1_idle, dev25.omega_q2_idle)
    assert v75 / v25 == pytest.approx(81.0, rel=1e-9)  # (75/25)^4
    assert t_cp(dev25, dev25.omega_q1_idle, dev25.omega_q2_idle) == pytest.approx(
        81.0 * t_cp(device, device.omega_q1_idle, device.omega_q2_idle), rel=1e-9
    )


def test_omega_zz_4th_symmetry():
    dev = DeviceParams.from_ghz(6.6, 6.0, 6.45, 0.18, 0.23, 0.06, 0.08)
    a = omega_zz_4th(dev, dev.omega_q1_idle, dev.omega_q2_idle)
    sw = dev.swapped()
    b = omega_zz_4th(sw, sw.omega_q1_idle, sw.omega_q2_idle)
    assert a == pytest.approx(b, rel=1e-12)


def test_omega_zz_4th_singularity_guard(device):
    # the 200-101 anticrossing itself: (omega1 - eta1) - omega2 = 0
    with pytest.raises(SingularEstimateError) as err:
        omega_zz_4th(device, device.omega_q1_idle, ghz_to_rad(6.4))
    assert "eta1" in str(err.value)


def test_estimates_bundle(device):
    est = estimates(device, omega_q1=ghz_to_rad(6.4))
    assert est.g_eff_200_101 == pytest.approx(19.2458498912, abs=1e-6)
    assert est.t_cp == pytest.approx(128.5140562249, abs=1e-6)
    assert len(est.lines()) == 5
