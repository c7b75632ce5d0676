"""CNOT and variational-parameter accounting under a fixed compilation convention.

Convention (documented, applied uniformly to all algorithms): each layer's
cost unitary compiles every ZZ interaction to 2 CNOTs plus a free Rz, so it
costs 2 CNOTs per graph edge; a weight-w Pauli-string mixer compiles to a
CNOT ladder of 2(w-1) CNOTs around one parameterized rotation (0 for
single-qubit strings, 2 for two-qubit strings); the collective X mixer is a
product of single-qubit rotations and costs 0 CNOTs.  Single-qubit gates are
free and no cross-layer cancellation is attempted, so counts depend only on
the ansatz structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ansatz import Ansatz, MixerOperator
from .maxcut import WeightedGraph

CNOTS_PER_EDGE = 2


@dataclass(frozen=True)
class ResourceTally:
    cnots: int
    parameters: int
    layers: int


def mixer_cnot_cost(mixer: MixerOperator) -> int:
    if mixer.is_collective():
        return 0
    weight = mixer.body.weight
    return 0 if weight <= 1 else 2 * (weight - 1)


def count_resources(a: Ansatz, g: WeightedGraph) -> ResourceTally:
    """Tally for the full ansatz on the given graph."""
    if a.n != g.n:
        raise ValueError(f"ansatz has {a.n} qubits but graph has {g.n}")
    cnots = 0
    for layer in a.layers:
        cnots += CNOTS_PER_EDGE * len(g.edges)
        cnots += mixer_cnot_cost(layer.mixer)
    return ResourceTally(cnots=cnots, parameters=2 * a.depth, layers=a.depth)


def resources_to_accuracy(record, delta_e: float) -> ResourceTally | None:
    """Tally at the first recorded layer with energy error <= delta_e.

    Returns None when the record never attains the target.
    """
    for layer in record.layers:
        if layer.energy_error <= delta_e:
            return ResourceTally(
                cnots=layer.n_cnots,
                parameters=layer.n_params,
                layers=layer.layer,
            )
    return None
