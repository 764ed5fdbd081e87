"""Pulse-level simulation and optimization of a single-step controlled-Z
gate in a tunable qubit/bus/qubit superconducting device."""

from .model import BareLabel, DeviceParams, HilbertSpace, assemble_hamiltonian, build_space
from .pulses import CZPulseSpec, ErfRamp, FrequencyTrajectory, SwapCZPulseSpec
from .propagator import EvolutionResult, evolve
from .metrics import ComputationalBasis, ErrorBreakdown, computational_basis, gate_error, project_gate
from .perturbation import PerturbativeEstimates, estimates
from .spectra import LabeledSpectrum, OverlapTrace, comoving_overlaps, omega_zz_numeric, spectrum_sweep
from .optimizer import OptimizationProblem, OptResult, grid_scan, minimize

__version__ = "0.1.0"

__all__ = [
    "BareLabel",
    "DeviceParams",
    "HilbertSpace",
    "assemble_hamiltonian",
    "build_space",
    "CZPulseSpec",
    "ErfRamp",
    "FrequencyTrajectory",
    "SwapCZPulseSpec",
    "EvolutionResult",
    "evolve",
    "ComputationalBasis",
    "ErrorBreakdown",
    "computational_basis",
    "gate_error",
    "project_gate",
    "PerturbativeEstimates",
    "estimates",
    "LabeledSpectrum",
    "OverlapTrace",
    "comoving_overlaps",
    "omega_zz_numeric",
    "spectrum_sweep",
    "OptimizationProblem",
    "OptResult",
    "grid_scan",
    "minimize",
    "__version__",
]
