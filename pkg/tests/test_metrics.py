import numpy as np
import pytest

from buscz.metrics import (
    COMPUTATIONAL_LABELS,
    computational_basis,
    cz_target,
    gate_error,
    project_gate,
)
from buscz.model import BareLabel, build_space
from buscz.propagator import evolve
from buscz.pulses import constant_trajectory


def test_basis_decoupled_is_bare(device_g0):
    basis = computational_basis(device_g0)
    space = build_space(device_g0)
    for j, lab in enumerate(basis.labels):
        expect = np.zeros(27)
        expect[space.index(lab)] = 1.0
        assert np.allclose(basis.vectors[:, j], expect, atol=1e-12)


def test_basis_idle_dominant_and_orthonormal(device):
    basis = computational_basis(device)
    space = build_space(device)
    gram = basis.vectors.conj().T @ basis.vectors
    assert np.max(np.abs(gram - np.eye(4))) < 1e-10
    for j, lab in enumerate(basis.labels):
        comp = basis.vectors[space.index(lab), j]
        assert abs(comp) ** 2 > 0.9
        assert comp.real > 0 and abs(comp.imag) < 1e-12  # gauge fixed


def test_ground_state_frequency_zero(device):
    basis = computational_basis(device)
    assert basis.labels[0] == BareLabel(0, 0, 0)
    assert basis.eps_ghz[0] == pytest.approx(0.0, abs=1e-12)


def test_project_identity(device):
    basis = computational_basis(device)
    m = project_gate(np.eye(27, dtype=complex), basis)
    assert np.max(np.abs(m - np.eye(4))) < 1e-12


def test_idle_wait_is_eigenphase_diagonal(device):
    basis = computational_basis(device)
    t = 45.0
    res = evolve(constant_trajectory(device, t), device, dt=0.01)
    m = project_gate(res, basis)
    pred = np.diag(np.exp(-2j * np.pi * basis.eps_ghz * t))
    assert np.max(np.abs(m - pred)) < 1e-9


def test_error_zero_on_target_family():
    rng = np.random.default_rng(3)
    for _ in range(100):
        phi1, phi2 = rng.uniform(-np.pi, np.pi, 2)
        b = gate_error(cz_target(phi1, phi2))
        assert b.total < 1e-12
        assert b.process_fidelity == pytest.approx(1.0, abs=1e-12)
        assert b.leakage == pytest.approx(0.0, abs=1e-12)


def test_error_two_on_identity():
    b = gate_error(np.eye(4))
    assert b.error_1 == b.error_2 == b.error_3 == 0.0
    assert b.error_4 == pytest.approx(2.0, abs=1e-15)
    assert b.total == pytest.approx(2.0, abs=1e-15)


def test_phase_extraction_convention():
    b = gate_error(cz_target(0.3, -1.1))
    assert b.phi_1 == pytest.approx(0.3, abs=1e-12)
    assert b.phi_2 == pytest.approx(-1.1, abs=1e-12)


def test_gauge_invariance():
    rng = np.random.default_rng(11)
    # a generic non-ideal gate: unitary 4x4 block with some leakage
    q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    m = q[:4, :4]
    base = gate_error(m).total
    for _ in range(100):
        a, b_ = rng.uniform(-np.pi, np.pi, 2)
        d = np.diag([1.0, np.exp(1j * a), np.exp(1j * b_), np.exp(1j * (a + b_))])
        assert gate_error(d @ m).total == pytest.approx(base, abs=1e-12)
        assert gate_error(d @ m @ d.conj().T).total == pytest.approx(base, abs=1e-12)


def test_leakage_nonnegative_for_projected_unitaries():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = rng.integers(5, 12)
        q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        b = gate_error(q[:4, :4])
        assert b.leakage >= -1e-12
        assert b.leakage <= 1.0
        assert 0.0 <= b.error_1 <= 1.0 and 0.0 <= b.error_2 <= 1.0 and 0.0 <= b.error_3 <= 1.0
        assert 0.0 <= b.error_4 <= 2.0


def test_fidelity_one_iff_zero_total_on_diagonal_family():
    rng = np.random.default_rng(9)
    for _ in range(50):
        phi1, phi2, chi = rng.uniform(-np.pi, np.pi, 3)
        scale = rng.uniform(0.6, 1.0, size=4)
        m = np.diag(
            [
                scale[0],
                scale[1] * np.exp(-1j * phi1),
                scale[2] * np.exp(-1j * phi2),
                -scale[3] * np.exp(-1j * (phi1 + phi2 + chi)),
            ]
        )
        m[0, 0] = 1.0
        b = gate_error(m)
        perfect = np.allclose(scale[1:], 1.0, atol=1e-12) and abs(chi) < 1e-12
        assert (b.total < 1e-10) == perfect
        assert (abs(b.process_fidelity - 1.0) < 1e-10) == perfect


def test_degenerate_amplitude_flag():
    m = np.diag([1.0, 0.0, 1.0, 1.0]).astype(complex)
    b = gate_error(m)
    assert b.degenerate
    assert b.error_4 == 2.0
    assert b.error_1 == pytest.approx(1.0)


def test_labels_order():
    assert [str(lab) for lab in COMPUTATIONAL_LABELS] == ["000", "100", "001", "101"]
