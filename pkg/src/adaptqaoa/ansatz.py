"""Mixer pools and gradient-based mixer selection.

Three nested pools are supported: the collective-X mixer alone, that plus
per-site X rotations, and additionally all two-qubit Pauli products that
commute with the global bit-flip operator.  Candidates failing the
flip-symmetry filter (odd number of Y or Z sites) are removed because their
selection gradient vanishes identically on flip-symmetric states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, PauliSum, commutes_with_flip, sum_x
from .statevector import (
    CostDiagonal,
    StateVector,
    flip_expectation,
    gradient_component,
)

POOL_KINDS = ("qaoa", "single", "multi")
COLLECTIVE_X_LABEL = "sumX"

# Two-qubit axis pairs surviving the even-Y/Z filter, in lexicographic order.
_TWO_QUBIT_AXES = (("X", "X"), ("Y", "Y"), ("Y", "Z"), ("Z", "Y"), ("Z", "Z"))


@dataclass(frozen=True)
class MixerOperator:
    """A pool element: either a single Pauli string or a commuting sum."""

    kind: str  # "pauli" or "sum"
    body: PauliString | PauliSum
    label: str

    @property
    def n(self) -> int:
        return self.body.n

    def is_collective(self) -> bool:
        return self.kind == "sum"


@dataclass(frozen=True)
class MixerPool:
    kind: str
    n: int
    operators: tuple[MixerOperator, ...]

    def __len__(self) -> int:
        return len(self.operators)

    def labels(self) -> list[str]:
        return [op.label for op in self.operators]


@dataclass(frozen=True)
class AnsatzLayer:
    mixer: MixerOperator
    gamma: float
    beta: float


@dataclass(frozen=True)
class Ansatz:
    n: int
    layers: tuple[AnsatzLayer, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def parameter_count(self) -> int:
        return 2 * len(self.layers)


def collective_x_mixer(n: int) -> MixerOperator:
    return MixerOperator(kind="sum", body=sum_x(n), label=COLLECTIVE_X_LABEL)


def _string_mixer(ps: PauliString) -> MixerOperator:
    return MixerOperator(kind="pauli", body=ps, label=ps.label)


def build_pool(kind: str, n: int) -> MixerPool:
    """Construct the symmetry-filtered mixer pool.

    Canonical ordering: the collective mixer first, then single-site X by
    site index, then two-qubit strings ordered by (i, j, axis pair).  Y_i and
    the collective Y sum are dropped by the filter; Z_iZ_j strings pass it
    and are kept even though they commute with any diagonal cost operator.
    """
    if kind not in POOL_KINDS:
        raise ValueError(f"unknown pool kind {kind!r}; expected one of {POOL_KINDS}")
    if n < 2:
        raise ValueError(f"pools need at least 2 qubits, got {n}")
    ops: list[MixerOperator] = [collective_x_mixer(n)]
    if kind in ("single", "multi"):
        for i in range(n):
            candidate = PauliString.single(n, i, "X")
            if commutes_with_flip(candidate):
                ops.append(_string_mixer(candidate))
    if kind == "multi":
        for i in range(n):
            for j in range(i + 1, n):
                for bi, cj in _TWO_QUBIT_AXES:
                    ps = PauliString.from_label(f"{bi}{i}{cj}{j}", n)
                    if commutes_with_flip(ps):
                        ops.append(_string_mixer(ps))
    return MixerPool(kind=kind, n=n, operators=tuple(ops))


def select_mixer(
    state: StateVector,
    d: CostDiagonal,
    pool: MixerPool,
    gamma0: float,
    symmetry_tol: float = 1e-6,
) -> tuple[int, np.ndarray, float]:
    """Pick the pool operator with the largest |energy gradient|.

    Evaluates every component at the probe angle ``gamma0`` and returns
    (argmax index, full gradient vector, max absolute component).  Ties keep
    the first occurrence in the pool's canonical order.  The input state must
    be flip-symmetric; a vanishing maximum signals that no operator helps.
    """
    if state.n != pool.n:
        raise ValueError(f"state has {state.n} qubits but pool expects {pool.n}")
    if abs(flip_expectation(state) - 1.0) > symmetry_tol:
        raise ValueError("state is not flip-symmetric; selection gradients unreliable")
    grads = np.array(
        [gradient_component(state, d, op.body, gamma0) for op in pool.operators]
    )
    index = int(np.argmax(np.abs(grads)))
    return index, grads, float(np.abs(grads[index]))
