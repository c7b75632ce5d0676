"""Weighted Max-Cut instances on regular graphs and their Ising encoding.

The cost operator is diagonal in the computational basis: a bitstring b
labels a bipartition and its energy is minus the total weight of the edges
it cuts, so the ground state is the maximum cut.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .pauli import PauliString, PauliSum
from .statevector import CostDiagonal

DEFAULT_MAX_ATTEMPTS = 200_000


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[tuple[int, int, float], ...]
    degree: int | None = None
    seed: int | None = None

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)


@dataclass(frozen=True)
class CutSolution:
    bitstring: int
    cut_value: float

    @property
    def energy(self) -> float:
        return -self.cut_value


class GraphGenerationError(RuntimeError):
    pass


def generate_regular_graph(
    n: int, d: int, seed: int, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> WeightedGraph:
    """Random d-regular simple graph with i.i.d. U(0,1) edge weights.

    Topology comes from the pairing (configuration) model: d stubs per
    vertex are shuffled into a perfect matching, and the whole attempt is
    rejected if it produces a self-loop or a duplicate edge.  Weights are
    then drawn in (i, j)-sorted edge order from a separate PCG64 stream, so
    the weight assignment does not depend on how many pairing attempts were
    needed.  Deterministic for fixed (n, d, seed).
    """
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even for a d-regular graph, got n={n}, d={d}")
    if not 0 <= d < n:
        raise ValueError(f"degree must satisfy 0 <= d < n, got d={d}, n={n}")
    topo_ss, weight_ss = np.random.SeedSequence(seed).spawn(2)
    topo_rng = np.random.Generator(np.random.PCG64(topo_ss))

    stubs = np.repeat(np.arange(n), d)
    edge_set: set[tuple[int, int]] = set()
    for attempt in range(max_attempts):
        shuffled = topo_rng.permutation(stubs)
        edge_set.clear()
        ok = True
        for k in range(0, len(shuffled), 2):
            i, j = int(shuffled[k]), int(shuffled[k + 1])
            if i == j:
                ok = False
                break
            pair = (i, j) if i < j else (j, i)
            if pair in edge_set:
                ok = False
                break
            edge_set.add(pair)
        if ok:
            break
    else:
        raise GraphGenerationError(
            f"pairing model failed to produce a simple {d}-regular graph on "
            f"{n} vertices after {max_attempts} attempts (seed {seed})"
        )

    weight_rng = np.random.Generator(np.random.PCG64(weight_ss))
    pairs = sorted(edge_set)
    weights = weight_rng.random(len(pairs))
    edges = tuple((i, j, float(w)) for (i, j), w in zip(pairs, weights))
    return WeightedGraph(n=n, edges=edges, degree=d, seed=seed)


def cost_diagonal(g: WeightedGraph) -> CostDiagonal:
    """Diagonal of the Ising cost operator: values[b] = -(weight cut by b)."""
    dim = 1 << g.n
    idx = np.arange(dim, dtype=np.int64)
    values = np.zeros(dim)
    for i, j, w in g.edges:
        cut = ((idx >> i) ^ (idx >> j)) & 1
        values -= w * cut
    return CostDiagonal(g.n, values)


def cost_pauli_sum(g: WeightedGraph) -> PauliSum:
    """Operator form of the cost: sum over edges of -(w/2)(I - Z_i Z_j)."""
    terms: list[tuple[PauliString, complex]] = []
    for i, j, w in g.edges:
        terms.append((PauliString.identity(g.n), -0.5 * w))
        zz = PauliString(g.n, 0, (1 << i) | (1 << j))
        terms.append((zz, 0.5 * w))
    return PauliSum.from_terms(terms, g.n)


def exact_ground(d: CostDiagonal) -> tuple[float, list[int]]:
    """Minimum diagonal value and every bitstring attaining it."""
    values = d.values
    emin = float(values.min())
    argmins = np.flatnonzero(values == emin)
    return emin, [int(b) for b in argmins]


def brute_force_max_cut(g: WeightedGraph) -> CutSolution:
    """Independent enumeration of all bipartitions (no vectorized reuse)."""
    best_cut = -1.0
    best_b = 0
    for b in range(1 << g.n):
        cut = 0.0
        for i, j, w in g.edges:
            if ((b >> i) & 1) != ((b >> j) & 1):
                cut += w
        if cut > best_cut:
            best_cut = cut
            best_b = b
    return CutSolution(bitstring=best_b, cut_value=best_cut)


def graph_to_dict(g: WeightedGraph) -> dict:
    return {
        "n": g.n,
        "d": g.degree,
        "seed": g.seed,
        "edges": [[i, j, w] for i, j, w in g.edges],
    }


def graph_from_dict(data: dict) -> WeightedGraph:
    edges = tuple((int(i), int(j), float(w)) for i, j, w in data["edges"])
    return WeightedGraph(
        n=int(data["n"]),
        edges=edges,
        degree=None if data.get("d") is None else int(data["d"]),
        seed=None if data.get("seed") is None else int(data["seed"]),
    )


def save_graph(g: WeightedGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g)) + "\n")


def load_graph(path: str | Path) -> WeightedGraph:
    return graph_from_dict(json.loads(Path(path).read_text()))
