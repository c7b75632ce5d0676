"""Iterative adaptive-ansatz runs and the fixed-mixer baseline.

One ADAPT iteration: rebuild the state from the current optimal parameters,
rank the pool by |energy gradient| at the probe angle, stop if the largest
component is below threshold, otherwise append the winner with fresh
parameters (gamma0, 0) and re-optimize every angle from the warm start.
The baseline sweeps the fixed collective-X ansatz over depths 1..p with the
same warm-start rule, recording the energy error at every depth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .ansatz import (
    COLLECTIVE_X_LABEL,
    Ansatz,
    AnsatzLayer,
    MixerOperator,
    MixerPool,
    collective_x_mixer,
    select_mixer,
)
from .maxcut import WeightedGraph, cost_diagonal, exact_ground
from .neldermead import OptimizerConfig, minimize
from .resources import count_resources
from .statevector import (
    CostDiagonal,
    StateVector,
    apply_cost_phase,
    apply_pauli_rotation,
    apply_pauli_sum_rotation,
    expectation,
    plus_state,
)

STATUS_GRADIENT = "converged-by-gradient"
STATUS_ENERGY = "converged-by-energy"
STATUS_BUDGET = "layer-budget"
STATUS_COMPLETED = "completed"

DEFAULT_GAMMA0 = 0.01
DEFAULT_GRAD_TOL = 1e-4
DEFAULT_ENERGY_TOL = 1e-3


@dataclass(frozen=True)
class LayerRecord:
    layer: int  # 1-based position in the ansatz
    mixer: str
    energy: float
    energy_error: float
    grad_norm: float | None  # max |gradient| at selection; None for the baseline
    n_params: int
    n_cnots: int


@dataclass
class RunRecord:
    n: int
    d: int | None
    seed: int | None
    algorithm: str  # "adapt" or "qaoa"
    pool: str
    gamma0: float
    exact_energy: float
    layers: list[LayerRecord]
    final_params: list[float]
    status: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "algorithm": self.algorithm,
            "pool": self.pool,
            "gamma0": self.gamma0,
            "exact_energy": self.exact_energy,
            "layers": [vars(lr) for lr in self.layers],
            "final_params": self.final_params,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        layers = [LayerRecord(**lr) for lr in data["layers"]]
        return cls(
            n=data["n"],
            d=data["d"],
            seed=data["seed"],
            algorithm=data["algorithm"],
            pool=data["pool"],
            gamma0=data["gamma0"],
            exact_energy=data["exact_energy"],
            layers=layers,
            final_params=list(data["final_params"]),
            status=data["status"],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "RunRecord":
        return cls.from_dict(json.loads(Path(path).read_text()))


def prepare_state(
    d: CostDiagonal, mixers: Sequence[MixerOperator], params: Sequence[float]
) -> StateVector:
    """Apply the layered ansatz to |+>^n; params interleave (gamma_k, beta_k)."""
    if len(params) != 2 * len(mixers):
        raise ValueError(f"expected {2 * len(mixers)} parameters, got {len(params)}")
    state = plus_state(d.n)
    for k, mixer in enumerate(mixers):
        gamma, beta = params[2 * k], params[2 * k + 1]
        state = apply_cost_phase(state, d, gamma)
        if mixer.is_collective():
            state = apply_pauli_sum_rotation(state, mixer.body, beta)
        else:
            state = apply_pauli_rotation(state, mixer.body, beta)
    return state


def ansatz_energy(
    d: CostDiagonal, mixers: Sequence[MixerOperator], params: Sequence[float]
) -> float:
    return expectation(prepare_state(d, mixers, params), d)


def _make_objective(d: CostDiagonal, mixers: Sequence[MixerOperator]):
    def objective(x: np.ndarray) -> float:
        return ansatz_energy(d, mixers, x)

    return objective


def _layer_tally(mixers: Sequence[MixerOperator], g: WeightedGraph):
    ansatz = Ansatz(
        g.n, tuple(AnsatzLayer(m, 0.0, 0.0) for m in mixers)
    )
    return count_resources(ansatz, g)


def run_adapt(
    g: WeightedGraph,
    pool: MixerPool,
    max_layers: int,
    grad_tol: float = DEFAULT_GRAD_TOL,
    gamma0: float = DEFAULT_GAMMA0,
    opt_cfg: OptimizerConfig | None = None,
    energy_tol: float = DEFAULT_ENERGY_TOL,
) -> RunRecord:
    """Grow the ansatz one selected mixer at a time, re-optimizing each step.

    Stops when the selection gradient's max component drops below
    ``grad_tol`` (a zero threshold disables this), when the energy error
    drops below ``energy_tol`` (likewise), or at the layer budget.
    """
    if max_layers < 1:
        raise ValueError(f"max_layers must be >= 1, got {max_layers}")
    if g.n != pool.n:
        raise ValueError(f"graph has {g.n} qubits but pool expects {pool.n}")
    d = cost_diagonal(g)
    e0, _ = exact_ground(d)

    mixers: list[MixerOperator] = []
    params: list[float] = []
    layers: list[LayerRecord] = []
    status = STATUS_BUDGET
    for k in range(1, max_layers + 1):
        state = prepare_state(d, mixers, params)
        index, _, grad_max = select_mixer(state, d, pool, gamma0)
        if grad_max < grad_tol:
            status = STATUS_GRADIENT
            break
        mixers.append(pool.operators[index])
        params.extend([gamma0, 0.0])
        result = minimize(_make_objective(d, mixers), params, opt_cfg)
        params = list(result.best_point)
        energy = result.best_value
        error = max(0.0, energy - e0)
        tally = _layer_tally(mixers, g)
        layers.append(
            LayerRecord(
                layer=k,
                mixer=pool.operators[index].label,
                energy=energy,
                energy_error=error,
                grad_norm=grad_max,
                n_params=tally.parameters,
                n_cnots=tally.cnots,
            )
        )
        if error < energy_tol:
            status = STATUS_ENERGY
            break
    return RunRecord(
        n=g.n,
        d=g.degree,
        seed=g.seed,
        algorithm="adapt",
        pool=pool.kind,
        gamma0=gamma0,
        exact_energy=e0,
        layers=layers,
        final_params=params,
        status=status,
    )


def run_standard_qaoa(
    g: WeightedGraph,
    p: int,
    opt_cfg: OptimizerConfig | None = None,
    gamma0: float = DEFAULT_GAMMA0,
    early_stop_tol: float | None = None,
) -> RunRecord:
    """Depth sweep 1..p of the fixed collective-X ansatz.

    Each depth re-optimizes all angles starting from the previous optimum
    extended by (gamma0, 0), and records the energy error.  ``early_stop_tol``
    optionally truncates the sweep once the error falls below it.
    """
    if p < 1:
        raise ValueError(f"depth must be >= 1, got {p}")
    d = cost_diagonal(g)
    e0, _ = exact_ground(d)
    mixer = collective_x_mixer(g.n)

    mixers: list[MixerOperator] = []
    params: list[float] = []
    layers: list[LayerRecord] = []
    status = STATUS_COMPLETED
    for k in range(1, p + 1):
        mixers.append(mixer)
        params.extend([gamma0, 0.0])
        result = minimize(_make_objective(d, mixers), params, opt_cfg)
        params = list(result.best_point)
        energy = result.best_value
        error = max(0.0, energy - e0)
        tally = _layer_tally(mixers, g)
        layers.append(
            LayerRecord(
                layer=k,
                mixer=mixer.label,
                energy=energy,
                energy_error=error,
                grad_norm=None,
                n_params=tally.parameters,
                n_cnots=tally.cnots,
            )
        )
        if early_stop_tol is not None and error < early_stop_tol:
            status = STATUS_ENERGY
            break
    return RunRecord(
        n=g.n,
        d=g.degree,
        seed=g.seed,
        algorithm="qaoa",
        pool="qaoa",
        gamma0=gamma0,
        exact_energy=e0,
        layers=layers,
        final_params=params,
        status=status,
    )


def mixer_selection_stats(records: Sequence[RunRecord]) -> float:
    """Fraction of recorded layers whose mixer differs from the collective X."""
    if not records:
        raise ValueError("no records given")
    total = sum(len(r.layers) for r in records)
    if total == 0:
        raise ValueError("records contain no layers")
    non_collective = sum(
        1 for r in records for lr in r.layers if lr.mixer != COLLECTIVE_X_LABEL
    )
    return non_collective / total
