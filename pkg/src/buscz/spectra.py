"""Instantaneous eigenanalysis along a trajectory.

Provides labeled level diagrams (dressed eigenfrequencies tagged by
their dominant bare component), the numeric ZZ rate
Omega_ZZ = eps_101 - eps_100 - eps_001 + eps_000, and the overlaps of
time-evolved computational states with the comoving eigenstates.

Two labeling modes exist because maximum-overlap labeling is ill-defined
in the middle of an anticrossing: isolated points use max-overlap with
an ambiguity flag, sweeps use continuation against the previous sample's
eigenvectors, which keeps labels smooth through near-degeneracies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    BareLabel,
    DeviceParams,
    HilbertSpace,
    assemble_hamiltonian,
    bare_frequency,
    build_space,
    rad_to_ghz,
)
from .propagator import DEFAULT_DT, evolve
from .pulses import FrequencyTrajectory

AMBIGUITY_THRESHOLD = 0.5

HERMITICITY_RTOL = 1e-12
ORTHONORMALITY_TOL = 1e-10


class EigenError(ValueError):
    pass


class AmbiguousLabelError(EigenError):
    """Requested a labeled eigenvalue at a point where labeling is ambiguous."""


def eigensolve(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    scale = np.max(np.abs(h))
    if scale > 0 and np.max(np.abs(h - h.conj().T)) > HERMITICITY_RTOL * scale:
        raise EigenError("matrix is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(h)
    gram = evecs.conj().T @ evecs
    if np.max(np.abs(gram - np.eye(h.shape[0]))) > ORTHONORMALITY_TOL:
        raise EigenError("eigenvector orthonormality failed")
    return evals, evecs


@dataclass(frozen=True)
class LabelAssignment:
    """Bare label attached to each eigenvector column."""

    labels: tuple[BareLabel, ...]
    overlaps: np.ndarray  # |<assigned bare (or previous vec)|eigvec>|^2 per column
    ambiguous: np.ndarray  # bool per column (max-overlap mode only)
    method: str  # "max-overlap" | "continuation"

    def index_of(self, label: BareLabel) -> int:
        return self.labels.index(BareLabel(*label))


def _greedy_bijection(weight: np.ndarray) -> np.ndarray:
    """Row index assigned to each column, greedily in decreasing weight."""
    n = weight.shape[0]
    order = np.argsort(weight, axis=None)[::-1]
    row_taken = np.zeros(n, dtype=bool)
    col_taken = np.zeros(n, dtype=bool)
    assign = np.full(n, -1)
    filled = 0
    for flat in order:
        i, k = divmod(int(flat), n)
        if row_taken[i] or col_taken[k]:
            continue
        assign[k] = i
        row_taken[i] = True
        col_taken[k] = True
        filled += 1
        if filled == n:
            break
    return assign


def label_eigenstates(
    eigvecs: np.ndarray,
    space: HilbertSpace,
    previous: np.ndarray | LabelAssignment | tuple | None = None,
) -> LabelAssignment:
    """Assign a bare label to each eigenvector.

    Without ``previous``: each column gets the label of its dominant bare
    component, resolved to a bijection greedily in decreasing overlap;
    columns whose assigned overlap falls below 0.5 are flagged ambiguous.

    With ``previous`` (a pair ``(eigvecs_prev, assignment_prev)``):
    continuation mode, matching columns to the previous eigenvectors by
    maximum squared overlap and carrying their labels over.
    """
    dim = space.dimension
    if eigvecs.shape != (dim, dim):
        raise EigenError(f"eigenvector matrix must be {dim}x{dim}")

    if previous is None:
        weight = np.abs(eigvecs) ** 2  # weight[i, k] = bare i content of column k
        assign = _greedy_bijection(weight)
        labels = tuple(space.label(int(i)) for i in assign)
        ov = weight[assign, np.arange(dim)]
        return LabelAssignment(
            labels=labels,
            overlaps=ov,
            ambiguous=ov < AMBIGUITY_THRESHOLD,
            method="max-overlap",
        )

    prev_vecs, prev_assign = previous
    weight = np.abs(prev_vecs.conj().T @ eigvecs) ** 2  # weight[j, k] = |<v_old_j|v_new_k>|^2
    assign = _greedy_bijection(weight)
    labels = tuple(prev_assign.labels[int(j)] for j in assign)
    ov = weight[assign, np.arange(dim)]
    return LabelAssignment(
        labels=labels,
        overlaps=ov,
        ambiguous=np.zeros(dim, dtype=bool),
        method="continuation",
    )


def labeled_idle_state(params: DeviceParams, label: BareLabel) -> tuple[np.ndarray, float]:
    """Idle eigenvector labeled by the given bare state, and its frequency (GHz).

    The global phase is fixed so the dominant bare component is real and
    positive.  Raises :class:`AmbiguousLabelError` when the label cannot
    be attached unambiguously (overlap below 0.5).
    """
    space = build_space(params)
    h = assemble_hamiltonian(params, params.omega_q1_idle, params.omega_q2_idle)
    evals, evecs = eigensolve(h)
    assign = label_eigenstates(evecs, space)
    lab = BareLabel(*label)
    k = assign.index_of(lab)
    if assign.ambiguous[k]:
        raise AmbiguousLabelError(f"labeling of {lab} ambiguous (overlap {assign.overlaps[k]:.3f})")
    vec = evecs[:, k].astype(complex)
    vec = vec * np.exp(-1j * np.angle(vec[space.index(lab)]))
    return vec, rad_to_ghz(evals[k])


@dataclass(frozen=True)
class LabeledSpectrum:
    """Dressed and bare level curves along a trajectory, one row per label."""

    times: np.ndarray
    labels: tuple[BareLabel, ...]  # fixed order, all labels of the space
    eigen_ghz: np.ndarray  # shape (len(labels), len(times))
    bare_ghz: np.ndarray  # same shape
    ambiguous_initial: np.ndarray  # flags of the t=0 max-overlap assignment
    method: str

    def eigen_curve(self, label: BareLabel) -> np.ndarray:
        return self.eigen_ghz[self.labels.index(BareLabel(*label))]

    def bare_curve(self, label: BareLabel) -> np.ndarray:
        return self.bare_ghz[self.labels.index(BareLabel(*label))]


def spectrum_sweep(
    traj: FrequencyTrajectory,
    params: DeviceParams,
    sample_dt: float = 0.25,
) -> LabeledSpectrum:
    """Sample H(t), eigensolve, and track labels by continuation."""
    if sample_dt <= 0:
        raise EigenError("sample_dt must be positive")
    space = build_space(params)
    n = int(round(traj.t_gate / sample_dt))
    times = np.linspace(0.0, traj.t_gate, n + 1)
    dim = space.dimension
    eigen = np.empty((dim, len(times)))
    bare = np.empty((dim, len(times)))

    prev = None
    initial_flags = None
    for j, t in enumerate(times):
        h = assemble_hamiltonian(params, float(traj.omega1(t)), float(traj.omega2(t)))
        evals, evecs = eigensolve(h)
        assign = label_eigenstates(evecs, space, previous=prev)
        if prev is None:
            initial_flags = assign.ambiguous.copy()
        prev = (evecs, assign)
        row = {lab: rad_to_ghz(evals[k]) for k, lab in enumerate(assign.labels)}
        for i, lab in enumerate(space.labels):
            eigen[i, j] = row[lab]
            bare[i, j] = bare_frequency(lab, float(traj.omega1(t)), float(traj.omega2(t)), params)
    return LabeledSpectrum(
        times=times,
        labels=tuple(space.labels),
        eigen_ghz=eigen,
        bare_ghz=bare,
        ambiguous_initial=initial_flags,
        method="continuation",
    )


def labeled_frequencies(
    params: DeviceParams, omega1: float, omega2: float
) -> dict[BareLabel, tuple[float, bool]]:
    """Max-overlap labeled eigenfrequencies (GHz) at a single point."""
    space = build_space(params)
    h = assemble_hamiltonian(params, omega1, omega2)
    evals, evecs = eigensolve(h)
    assign = label_eigenstates(evecs, space)
    return {
        lab: (rad_to_ghz(evals[k]), bool(assign.ambiguous[k]))
        for k, lab in enumerate(assign.labels)
    }


def omega_zz_numeric(params: DeviceParams, omega1: float, omega2: float) -> float:
    """Numeric ZZ rate eps_101 - eps_100 - eps_001 + eps_000, cyclic MHz."""
    freqs = labeled_frequencies(params, omega1, omega2)
    needed = [BareLabel(1, 0, 1), BareLabel(1, 0, 0), BareLabel(0, 0, 1), BareLabel(0, 0, 0)]
    for lab in needed:
        if freqs[lab][1]:
            raise AmbiguousLabelError(f"labeling ambiguous at evaluation point for {lab}")
    e101, e100, e001, e000 = (freqs[lab][0] for lab in needed)
    return (e101 - e100 - e001 + e000) * 1e3


@dataclass(frozen=True)
class OverlapTrace:
    """|<eig_k(t)| U(t) |logic_j>|^2 for all eigenstate labels k."""

    times: np.ndarray
    eig_labels: tuple[BareLabel, ...]
    logic_labels: tuple[BareLabel, ...]
    probabilities: np.ndarray  # shape (len(times), len(eig_labels), len(logic_labels))

    def trace(self, eig_label: BareLabel, logic_label: BareLabel) -> np.ndarray:
        i = self.eig_labels.index(BareLabel(*eig_label))
        j = self.logic_labels.index(BareLabel(*logic_label))
        return self.probabilities[:, i, j]

    def completeness(self) -> np.ndarray:
        """Sum over all eigenstates per (time, logic state); equals 1 for unitary evolution."""
        return self.probabilities.sum(axis=1)


DEFAULT_LOGIC_LABELS = (
    BareLabel(0, 0, 0),
    BareLabel(1, 0, 0),
    BareLabel(0, 0, 1),
    BareLabel(1, 0, 1),
)


def comoving_overlaps(
    traj: FrequencyTrajectory,
    params: DeviceParams,
    logic_states=DEFAULT_LOGIC_LABELS,
    sample_dt: float = 0.25,
    dt: float = DEFAULT_DT,
) -> OverlapTrace:
    """Evolve the logic states and project on the instantaneous eigenbasis.

    Logic states are the idle eigenstates carrying the given bare labels.
    Eigenstate labels follow the continuation convention along the
    trajectory, anchored at the idle-point max-overlap assignment.
    """
    space = build_space(params)
    logic_labels = tuple(BareLabel(*lab) for lab in logic_states)
    logic_vecs = np.stack(
        [labeled_idle_state(params, lab)[0] for lab in logic_labels], axis=1
    )

    n = int(round(traj.t_gate / sample_dt))
    times = np.linspace(0.0, traj.t_gate, n + 1)
    result = evolve(traj, params, 0.0, traj.t_gate, dt, checkpoints=list(times))

    probs = np.empty((len(times), space.dimension, len(logic_labels)))
    prev = None
    order = np.empty(space.dimension, dtype=int)
    for j, t in enumerate(result.checkpoint_times):
        h = assemble_hamiltonian(params, float(traj.omega1(t)), float(traj.omega2(t)))
        evals, evecs = eigensolve(h)
        assign = label_eigenstates(evecs, space, previous=prev)
        prev = (evecs, assign)
        evolved = result.checkpoint_unitaries[j] @ logic_vecs
        amp = evecs.conj().T @ evolved  # (eig index, logic)
        for k, lab in enumerate(assign.labels):
            order[space.index(lab)] = k
        probs[j] = np.abs(amp[order, :]) ** 2
    return OverlapTrace(
        times=result.checkpoint_times,
        eig_labels=tuple(space.labels),
        logic_labels=logic_labels,
        probabilities=probs,
    )
