"""Derivative-free search over pulse parameters.

The gate-error functional is minimized with a Nelder-Mead simplex under
the two design constraints (population errors below 1e-4, conditional
phase error below 1e-10), handled by exact-penalty augmentation.  The
conditional-phase term has a V-shaped minimum, so once the simplex has
located the valley the search is restarted from the best point with a
simplex scaled to the remaining phase residual; that polishes the last
few orders of magnitude in a handful of evaluations.  The search stops
as soon as a feasible point is found.

Everything here is deterministic for a fixed problem and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from .metrics import ErrorBreakdown, computational_basis, gate_error, project_gate
from .model import DeviceParams, ModelError
from .propagator import DEFAULT_DT, evolve
from .pulses import (
    CZPulseSpec,
    PulseConfigError,
    SwapCZPulseSpec,
    cz_trajectory,
    swap_cz_trajectory,
)

CONSTRAINT_123 = 1e-4
CONSTRAINT_4 = 1e-10
PENALTY_WEIGHT = 1e3
INVALID_TOTAL = 4.0


@dataclass(frozen=True)
class OptimizationProblem:
    """Objective plus box bounds, constraint thresholds and search budget."""

    names: tuple[str, ...]
    initial: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    breakdown_fn: Callable[[np.ndarray], ErrorBreakdown]  # may raise PulseConfigError
    constraint_123: float = CONSTRAINT_123
    constraint_4: float = CONSTRAINT_4
    penalty_weight: float = PENALTY_WEIGHT
    max_evals: int = 500  # per Nelder-Mead run
    restarts: int = 3
    simplex_scale: np.ndarray = None
    seed: int = 1234

    def __post_init__(self):
        n = len(self.names)
        for arr_name in ("initial", "lower", "upper"):
            arr = np.asarray(getattr(self, arr_name), dtype=float)
            object.__setattr__(self, arr_name, arr)
            if arr.shape != (n,):
                raise ValueError(f"{arr_name} must have length {n}")
        if not np.all(np.isfinite(self.lower)) or not np.all(np.isfinite(self.upper)):
            raise ValueError("bounds must be finite")
        if np.any(self.initial < self.lower) or np.any(self.initial > self.upper):
            raise ValueError("initial point outside bounds")
        scale = self.simplex_scale
        if scale is None:
            scale = 0.1 * (self.upper - self.lower)
        object.__setattr__(self, "simplex_scale", np.asarray(scale, dtype=float))


@dataclass
class Evaluation:
    """One objective evaluation, kept in the optimization log."""

    index: int
    params: np.ndarray
    breakdown: ErrorBreakdown | None
    valid: bool

    @property
    def total(self) -> float:
        return self.breakdown.total if self.valid else INVALID_TOTAL

    @property
    def error_terms(self) -> tuple[float, float, float, float]:
        if not self.valid:
            return (1.0, 1.0, 1.0, 1.0)
        b = self.breakdown
        return (b.error_1, b.error_2, b.error_3, b.error_4)


@dataclass
class OptResult:
    best_params: np.ndarray
    best_breakdown: ErrorBreakdown | None
    best_valid: bool
    feasible: bool
    evaluations: int
    status: str  # "feasible" | "converged" | "max_evals"
    log: list[Evaluation] = field(default_factory=list)


class _FeasiblePoint(Exception):
    pass


class _Driver:
    """Evaluation bookkeeping shared by the simplex runs of one search."""

    def __init__(self, problem: OptimizationProblem):
        self.problem = problem
        self.log: list[Evaluation] = []
        self.best: Evaluation | None = None
        self.stop_on_feasible = True

    def violation(self, ev: Evaluation) -> float:
        if not ev.valid:
            # strictly worse than any valid point
            return 3.0 + 2.0
        b = ev.breakdown
        return max(0.0, b.error_123 - self.problem.constraint_123) + max(
            0.0, b.error_4 - self.problem.constraint_4
        )

    def is_feasible(self, ev: Evaluation) -> bool:
        return ev.valid and self.violation(ev) == 0.0

    def penalized(self, ev: Evaluation) -> float:
        return ev.total + self.problem.penalty_weight * self.violation(ev)

    def evaluate(self, x: np.ndarray) -> Evaluation:
        x = np.asarray(x, dtype=float)
        try:
            if np.any(x < self.problem.lower - 1e-12) or np.any(x > self.problem.upper + 1e-12):
                raise PulseConfigError("outside bounds")
            breakdown = self.problem.breakdown_fn(x)
            ev = Evaluation(len(self.log), x.copy(), breakdown, True)
        except (PulseConfigError, ModelError):
            ev = Evaluation(len(self.log), x.copy(), None, False)
        self.log.append(ev)
        if self.best is None or self.penalized(ev) < self.penalized(self.best):
            self.best = ev
        return ev

    def __call__(self, x: np.ndarray) -> float:
        ev = self.evaluate(x)
        if self.stop_on_feasible and self.is_feasible(ev):
            raise _FeasiblePoint
        return self.penalized(ev)


def _initial_simplex(x0: np.ndarray, scale: np.ndarray, lower, upper) -> np.ndarray:
    sim = [np.clip(x0, lower, upper)]
    for i in range(len(x0)):
        pt = sim[0].copy()
        step = scale[i] if pt[i] + scale[i] <= upper[i] else -scale[i]
        pt[i] = np.clip(pt[i] + step, lower[i], upper[i])
        if pt[i] == sim[0][i]:  # degenerate vertex after clipping
            pt[i] = np.clip(pt[i] + 1e-6 * (upper[i] - lower[i]), lower[i], upper[i])
        sim.append(pt)
    return np.asarray(sim)


def minimize(problem: OptimizationProblem) -> OptResult:
    """Penalized Nelder-Mead with feasibility-targeted restarts."""
    driver = _Driver(problem)
    rng = np.random.default_rng(problem.seed)
    x0 = problem.initial.copy()
    scale = problem.simplex_scale.copy()
    status = "max_evals"

    for attempt in range(problem.restarts + 1):
        simplex = _initial_simplex(x0, scale, problem.lower, problem.upper)
        try:
            res = scipy_minimize(
                driver,
                simplex[0],
                method="Nelder-Mead",
                bounds=list(zip(problem.lower, problem.upper)),
                options=dict(
                    initial_simplex=simplex,
                    xatol=1e-10,
                    fatol=1e-13,
                    maxfev=problem.max_evals,
                    adaptive=False,
                ),
            )
            converged = bool(res.success)
        except _FeasiblePoint:
            status = "feasible"
            break
        if driver.best is not None and driver.is_feasible(driver.best):
            status = "feasible"
            break
        if attempt == problem.restarts:
            status = "converged" if converged else "max_evals"
            break
        # Restart near the incumbent with a simplex sized to the remaining
        # constraint violation (the phase error is roughly proportional to
        # the parameter distance from the feasible curve).
        best = driver.best
        residual = driver.violation(best) if best is not None else 1.0
        shrink = np.clip(100.0 * residual, 1e-8, 1.0)
        scale = np.maximum(problem.simplex_scale * shrink, 1e-9)
        center = best.params if best is not None else problem.initial
        x0 = np.clip(center + rng.normal(0.0, 1.0, size=len(center)) * scale, problem.lower, problem.upper)

    best = driver.best
    feasible = best is not None and driver.is_feasible(best)
    return OptResult(
        best_params=best.params.copy() if best is not None else problem.initial,
        best_breakdown=best.breakdown if best is not None else None,
        best_valid=bool(best.valid) if best is not None else False,
        feasible=bool(feasible),
        evaluations=len(driver.log),
        status=status if best is not None else "max_evals",
        log=driver.log,
    )


def grid_scan(problem: OptimizationProblem, resolutions) -> list[Evaluation]:
    """Evaluate the objective on a rectangular grid spanning the bounds.

    ``resolutions`` gives the number of points per parameter; a single
    point degenerates to the lower bound.  Invalid configurations are
    recorded with their flag rather than raised.
    """
    resolutions = [int(r) for r in resolutions]
    if len(resolutions) != len(problem.names) or any(r < 1 for r in resolutions):
        raise ValueError("need one positive resolution per parameter")
    axes = [
        np.linspace(lo, hi, r)
        for lo, hi, r in zip(problem.lower, problem.upper, resolutions)
    ]
    driver = _Driver(problem)
    driver.stop_on_feasible = False
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=-1)
    return [driver.evaluate(p) for p in points]


def single_step_problem(
    device: DeviceParams,
    initial=(10.0, 26.0),
    lower=(2.0, 15.0),
    upper=(25.0, 32.0),
    t_gate: float = 45.0,
    sigma_in: float = 3.0,
    sigma_fin: float = 3.0,
    dt: float = DEFAULT_DT,
    **kwargs,
) -> OptimizationProblem:
    """Two-parameter single-step CZ search: undershoot (MHz), duration (ns)."""
    basis = computational_basis(device)

    def breakdown_fn(x: np.ndarray) -> ErrorBreakdown:
        spec = CZPulseSpec(
            device=device,
            undershoot=float(x[0]),
            t_undershoot=float(x[1]),
            sigma_in=sigma_in,
            sigma_fin=sigma_fin,
            t_gate=t_gate,
        )
        result = evolve(cz_trajectory(spec), device, 0.0, t_gate, dt)
        return gate_error(project_gate(result, basis))

    return OptimizationProblem(
        names=("undershoot_mhz", "t_undershoot_ns"),
        initial=np.asarray(initial, dtype=float),
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
        breakdown_fn=breakdown_fn,
        simplex_scale=np.array([2.0, 2.0]),
        **kwargs,
    )


def swap_problem(
    device: DeviceParams,
    initial=(11.0, 6.2, 12.0, 11.0),
    lower=(6.0, 6.05, 6.0, 6.0),
    upper=(14.0, 6.45, 18.0, 14.0),
    move_qubit: int = 1,
    sigma: float = 0.5,
    t_gate: float = 45.0,
    step_gap: float = 2.0,
    lead_in: float = 3.0,
    dt: float = DEFAULT_DT,
    **kwargs,
) -> OptimizationProblem:
    """Four-parameter SWAP-based comparison search.

    Parameters are the first MOVE dwell, the other qubit's dwell
    frequency and duration, and the return MOVE dwell.
    """
    basis = computational_basis(device)

    def breakdown_fn(x: np.ndarray) -> ErrorBreakdown:
        spec = SwapCZPulseSpec(
            device=device,
            move1_dwell=float(x[0]),
            dwell_nu=float(x[1]),
            dwell_duration=float(x[2]),
            move2_dwell=float(x[3]),
            move_qubit=move_qubit,
            sigma=sigma,
            t_gate=t_gate,
            step_gap=step_gap,
            lead_in=lead_in,
        )
        result = evolve(swap_cz_trajectory(spec), device, 0.0, t_gate, dt)
        return gate_error(project_gate(result, basis))

    return OptimizationProblem(
        names=("move1_dwell_ns", "dwell_nu_ghz", "dwell_duration_ns", "move2_dwell_ns"),
        initial=np.asarray(initial, dtype=float),
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
        breakdown_fn=breakdown_fn,
        simplex_scale=np.array([1.0, 0.02, 1.0, 1.0]),
        **kwargs,
    )
