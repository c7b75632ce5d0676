"""Derivative-free Nelder-Mead simplex minimizer.

Standard reflection/expansion/contraction/shrink coefficients (1, 2, 0.5,
0.5).  The incumbent best point is tracked across the whole call, so the
reported value never regresses; restarts rebuild a fresh axis-aligned
simplex around the incumbent with a deterministically shrunk edge length
(no randomness anywhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

ALPHA = 1.0  # reflection
GAMMA = 2.0  # expansion
RHO = 0.5  # contraction
SIGMA = 0.5  # shrink
RESTART_SHRINK = 0.5  # simplex edge factor applied at each restart


@dataclass
class OptimizerConfig:
    initial_step: float = 0.1
    f_tol: float = 1e-10
    x_tol: float = 1e-8
    max_evals: int | None = None  # None -> 200 * dimension
    restarts: int = 1

    def __post_init__(self):
        if self.initial_step <= 0 or self.f_tol <= 0 or self.x_tol <= 0:
            raise ValueError("initial_step, f_tol and x_tol must all be positive")
        if self.restarts < 0:
            raise ValueError("restarts must be non-negative")


@dataclass
class OptimizationResult:
    best_point: np.ndarray
    best_value: float
    evals: int
    converged: bool


class _Budget:
    def __init__(self, objective: Callable, limit: int):
        self.objective = objective
        self.limit = limit
        self.evals = 0
        self.best_point: np.ndarray | None = None
        self.best_value = np.inf

    def exhausted(self) -> bool:
        return self.evals >= self.limit

    def __call__(self, x: np.ndarray) -> float:
        self.evals += 1
        value = float(self.objective(x))
        if not np.isfinite(value):
            raise RuntimeError(
                f"objective returned non-finite value {value} at x={x.tolist()}"
            )
        if value < self.best_value:
            self.best_value = value
            self.best_point = x.copy()
        return value


def _initial_simplex(x0: np.ndarray, step: float) -> list[np.ndarray]:
    simplex = [x0.copy()]
    for i in range(x0.size):
        vertex = x0.copy()
        vertex[i] += step
        simplex.append(vertex)
    return simplex


def _nelder_mead_loop(
    budget: _Budget, x0: np.ndarray, step: float, f_tol: float, x_tol: float
) -> bool:
    """One simplex descent; returns True if the tolerances were met."""
    points = _initial_simplex(x0, step)
    values = []
    for p in points:
        if budget.exhausted():
            return False
        values.append(budget(p))

    while True:
        order = np.argsort(values, kind="stable")
        points = [points[k] for k in order]
        values = [values[k] for k in order]

        spread = values[-1] - values[0]
        diameter = max(
            float(np.max(np.abs(p - points[0]))) for p in points[1:]
        )
        if spread < f_tol and diameter < x_tol:
            return True
        if budget.exhausted():
            return False

        centroid = np.mean(points[:-1], axis=0)
        worst = points[-1]
        reflected = centroid + ALPHA * (centroid - worst)
        r_value = budget(reflected)

        if r_value < values[0]:
            if budget.exhausted():
                points[-1], values[-1] = reflected, r_value
                continue
            expanded = centroid + GAMMA * (centroid - worst)
            e_value = budget(expanded)
            if e_value < r_value:
                points[-1], values[-1] = expanded, e_value
            else:
                points[-1], values[-1] = reflected, r_value
            continue

        if r_value < values[-2]:
            points[-1], values[-1] = reflected, r_value
            continue

        if budget.exhausted():
            continue
        if r_value < values[-1]:
            contracted = centroid + RHO * (reflected - centroid)
        else:
            contracted = centroid + RHO * (worst - centroid)
        c_value = budget(contracted)
        if c_value < min(r_value, values[-1]):
            points[-1], values[-1] = contracted, c_value
            continue

        # Shrink toward the best vertex
        for k in range(1, len(points)):
            points[k] = points[0] + SIGMA * (points[k] - points[0])
            if budget.exhausted():
                return False
            values[k] = budget(points[k])


def minimize(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float] | np.ndarray,
    cfg: OptimizerConfig | None = None,
) -> OptimizationResult:
    """Minimize a deterministic objective from x0.

    Terminates when both the simplex value spread is below ``f_tol`` and its
    diameter is below ``x_tol``, or when the evaluation budget is spent.
    ``restarts`` extra descents are started from the incumbent best point
    with the simplex edge shrunk by ``RESTART_SHRINK`` each time.
    """
    cfg = cfg or OptimizerConfig()
    start = np.asarray(x0, dtype=float).ravel()
    if start.size == 0:
        raise ValueError("x0 must contain at least one parameter")
    limit = cfg.max_evals if cfg.max_evals is not None else 200 * start.size
    if limit < start.size + 1:
        raise ValueError(
            f"max_evals={limit} cannot even evaluate the initial simplex "
            f"({start.size + 1} points)"
        )

    budget = _Budget(objective, limit)
    converged = _nelder_mead_loop(budget, start, cfg.initial_step, cfg.f_tol, cfg.x_tol)
    for r in range(1, cfg.restarts + 1):
        if budget.exhausted():
            break
        step = cfg.initial_step * (RESTART_SHRINK ** r)
        converged = _nelder_mead_loop(
            budget, budget.best_point.copy(), step, cfg.f_tol, cfg.x_tol
        )
    return OptimizationResult(
        best_point=budget.best_point.copy(),
        best_value=budget.best_value,
        evals=budget.evals,
        converged=converged,
    )
