"""Adiabatic gauge potentials for the linear cost/mixer interpolation.

For H0(l) = l*H_C + (1-l)*sumX, the gauge potential generating eigenstate
transport is approximated variationally by the odd nested-commutator series
A(l) = i * sum_k alpha_k C_{2k-1}, with C_1 = [H0, dH] and
C_{m+1} = [H0, C_m].  The coefficients minimize the Frobenius action of the
residual G = dH - i[H0, A], which reduces to a small linear system in the
trace inner products of the even nestings.  Ranking the time-averaged
magnitudes of A's Pauli coefficients gives the dominant counterdiabatic
operators that adaptive mixer selection is compared against.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .maxcut import WeightedGraph, cost_pauli_sum
from .pauli import PauliString, PauliSum, sum_to_matrix, sum_x, trace_inner
from .runner import RunRecord

DEFAULT_GRID = 101
DEFAULT_TOP_K = 5
COEFF_PRUNE = 1e-12
EXACT_ORACLE_MAX_QUBITS = 6


@dataclass(frozen=True)
class InterpolationHamiltonian:
    graph: WeightedGraph
    lam: float
    h0: PauliSum
    dlam: PauliSum


@dataclass(frozen=True)
class DominantSet:
    """Top-k Pauli strings of the time-averaged gauge potential."""

    k: int
    entries: tuple[tuple[str, float], ...]  # (label, averaged |coefficient|)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(label for label, _ in self.entries)


def build_h0(g: WeightedGraph, lam: float) -> InterpolationHamiltonian:
    """Interpolating operator l*H_C + (1-l)*sumX and its l-derivative."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"interpolation parameter must be in [0, 1], got {lam}")
    hc = cost_pauli_sum(g)
    sx = sum_x(g.n)
    h0 = lam * hc + (1.0 - lam) * sx
    dlam = hc - sx
    return InterpolationHamiltonian(graph=g, lam=lam, h0=h0, dlam=dlam)


def _solve_gram(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve the normal equations, falling back to a pseudo-inverse."""
    try:
        cond = np.linalg.cond(mat)
        if not np.isfinite(cond) or cond > 1e12:
            raise np.linalg.LinAlgError("ill-conditioned")
        return np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError:
        warnings.warn(
            "gauge-potential normal equations are singular; using pseudo-inverse",
            RuntimeWarning,
        )
        return np.linalg.lstsq(mat, rhs, rcond=None)[0]


def approx_gauge_potential(
    h: InterpolationHamiltonian, order: int
) -> tuple[np.ndarray, PauliSum]:
    """Variational nested-commutator gauge potential at one interpolation point.

    Returns the coefficient vector alpha (length ``order``) and the Hermitian
    PauliSum A = i * sum_k alpha_k C_{2k-1}.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    nested = [h.dlam]
    for _ in range(2 * order):
        nested.append(h.h0.commutator_with(nested[-1]))
    evens = [nested[2 * j] for j in range(1, order + 1)]
    mat = np.array(
        [[trace_inner(ca, cb) for cb in evens] for ca in evens]
    )
    rhs = -np.array([trace_inner(ce, h.dlam) for ce in evens])
    alpha = _solve_gram(mat, rhs)
    a = PauliSum.zero(h.dlam.n)
    for k in range(1, order + 1):
        a = a + (1j * alpha[k - 1]) * nested[2 * k - 1]
    return alpha, a


def action_residual(h: InterpolationHamiltonian, a: PauliSum) -> float:
    """Frobenius action of the residual G = dH - i[H0, A] (normalized trace)."""
    g = h.dlam - 1j * h.h0.commutator_with(a)
    return trace_inner(g, g)


def exact_gauge_potential(h: InterpolationHamiltonian, gap_tol: float = 1e-9) -> np.ndarray:
    """Spectral-formula gauge potential as a dense matrix (test oracle).

    A_mn = -i <m|dH|n> / (E_m - E_n) on non-degenerate off-diagonal pairs;
    degenerate pairs and the diagonal are set to zero.
    """
    n = h.dlam.n
    if n > EXACT_ORACLE_MAX_QUBITS:
        raise ValueError(
            f"dense oracle limited to {EXACT_ORACLE_MAX_QUBITS} qubits, got {n}"
        )
    h0 = sum_to_matrix(h.h0)
    dlam = sum_to_matrix(h.dlam)
    energies, vectors = np.linalg.eigh(h0)
    dh = vectors.conj().T @ dlam @ vectors
    dim = energies.size
    gaps = energies[:, None] - energies[None, :]
    scale = max(1.0, float(np.max(np.abs(energies))))
    degenerate = np.abs(gaps) <= gap_tol * scale
    off = ~degenerate
    if np.any(degenerate & ~np.eye(dim, dtype=bool) & (np.abs(dh) > 1e-10)):
        warnings.warn(
            "degenerate level pair with nonzero coupling; gauge potential "
            "element set to zero",
            RuntimeWarning,
        )
    a_eig = np.zeros((dim, dim), dtype=complex)
    a_eig[off] = -1j * dh[off] / gaps[off]
    return vectors @ a_eig @ vectors.conj().T


class _BilinearNestings:
    """Nested commutators of l*A + (1-l)*B expanded in powers of l.

    D[k][m] collects the depth-k words with exactly m applications of A, so
    C_k(l) = sum_m l^m (1-l)^(k-m) D[k][m] for every l at once.
    """

    def __init__(self, g: WeightedGraph, max_depth: int):
        self.n = g.n
        a_op = cost_pauli_sum(g)
        b_op = sum_x(g.n)
        self.dlam = a_op - b_op
        self.depths: list[list[PauliSum]] = [[]]  # index 0 unused
        current = [b_op.commutator_with(self.dlam), a_op.commutator_with(self.dlam)]
        self.depths.append(current)
        for k in range(2, max_depth + 1):
            prev = self.depths[k - 1]
            nxt = []
            for m in range(k + 1):
                acc = PauliSum.zero(self.n)
                if m >= 1:
                    acc = acc + a_op.commutator_with(prev[m - 1])
                if m <= k - 1:
                    acc = acc + b_op.commutator_with(prev[m])
                nxt.append(acc)
            self.depths.append(nxt)

    def assemble(self, depth: int, lam: float) -> PauliSum:
        out = PauliSum.zero(self.n)
        for m, term in enumerate(self.depths[depth]):
            out = out + (lam ** m * (1.0 - lam) ** (depth - m)) * term
        return out


def _alphas_on_grid(
    bil: _BilinearNestings, order: int, lams: np.ndarray
) -> np.ndarray:
    """Least-action coefficients for every grid point, order x grid."""
    # trace tensors between even nestings, and against dlam
    even = {j: bil.depths[2 * j] for j in range(1, order + 1)}
    t_pair = {
        (j, k): np.array(
            [[trace_inner(da, db) for db in even[k]] for da in even[j]]
        )
        for j in range(1, order + 1)
        for k in range(1, order + 1)
    }
    r_vec = {
        j: np.array([trace_inner(d, bil.dlam) for d in even[j]])
        for j in range(1, order + 1)
    }

    def weights(depth: int, lam: float) -> np.ndarray:
        m = np.arange(depth + 1)
        return lam ** m * (1.0 - lam) ** (depth - m)

    alphas = np.empty((order, lams.size))
    for gi, lam in enumerate(lams):
        w = {j: weights(2 * j, lam) for j in range(1, order + 1)}
        mat = np.array(
            [
                [w[j] @ t_pair[(j, k)] @ w[k] for k in range(1, order + 1)]
                for j in range(1, order + 1)
            ]
        )
        rhs = -np.array([w[j] @ r_vec[j] for j in range(1, order + 1)])
        alphas[:, gi] = _solve_gram(mat, rhs)
    return alphas


def _time_averaged_coefficients(
    bil: _BilinearNestings, order: int, lams: np.ndarray, alphas: np.ndarray
) -> dict[str, float]:
    """Mean |Pauli coefficient| of A(l) over the grid, keyed by string label.

    Odd nestings of real-Hermitian operators carry purely imaginary
    coefficients, so A = i*sum alpha_k C_{2k-1} has the real coefficient
    -alpha_k * Im(c) on every string.
    """
    combos: list[tuple[int, int]] = []  # (k, m)
    basis: dict[tuple[int, int], int] = {}
    for k in range(1, order + 1):
        for m in range(2 * k):
            combos.append((k, m))
            for (key, coeff) in bil.depths[2 * k - 1][m]._terms.items():
                if key not in basis:
                    basis[key] = len(basis)
    if not basis:
        return {}
    v = np.zeros((len(combos), len(basis)))
    for row, (k, m) in enumerate(combos):
        for key, coeff in bil.depths[2 * k - 1][m]._terms.items():
            v[row, basis[key]] = coeff.imag
    w = np.zeros((lams.size, len(combos)))
    for col, (k, m) in enumerate(combos):
        w[:, col] = -alphas[k - 1, :] * lams ** m * (1.0 - lams) ** (2 * k - 1 - m)
    coeff_grid = w @ v  # grid x basis, real coefficients of A(l)
    averaged = np.mean(np.abs(coeff_grid), axis=0)
    out = {}
    for key, col in basis.items():
        if averaged[col] > COEFF_PRUNE:
            x_mask, z_mask = key
            out[PauliString(bil.n, x_mask, z_mask).label] = float(averaged[col])
    return out


def _rank(averaged: dict[str, float], k: int) -> DominantSet:
    ordered = sorted(averaged.items(), key=lambda kv: (-kv[1], kv[0]))
    return DominantSet(k=k, entries=tuple(ordered[:k]))


def time_averaged_ranking(
    g: WeightedGraph,
    order: int,
    grid: int = DEFAULT_GRID,
    top_k: int = DEFAULT_TOP_K,
) -> tuple[dict[str, float], DominantSet]:
    """Grid-averaged gauge-potential coefficient ranking for one instance."""
    result = rankings_for_orders(g, [order], grid=grid, top_k=top_k)
    return result[order]


def rankings_for_orders(
    g: WeightedGraph,
    orders: list[int],
    grid: int = DEFAULT_GRID,
    top_k: int = DEFAULT_TOP_K,
) -> dict[int, tuple[dict[str, float], DominantSet]]:
    """Rankings for several approximation orders, sharing the nestings."""
    if grid < 2:
        raise ValueError(f"grid must have at least 2 points, got {grid}")
    if not orders or any(o < 1 for o in orders):
        raise ValueError(f"orders must be positive, got {orders}")
    max_order = max(orders)
    bil = _BilinearNestings(g, 2 * max_order)
    lams = np.linspace(0.0, 1.0, grid)
    out = {}
    for order in sorted(set(orders)):
        if bil.dlam:
            alphas = _alphas_on_grid(bil, order, lams)
            averaged = _time_averaged_coefficients(bil, order, lams, alphas)
        else:
            averaged = {}
        out[order] = (averaged, _rank(averaged, top_k))
    return out


def overlap_probability(
    runs: list[RunRecord],
    sets: list[DominantSet],
    max_layer: int,
) -> list[float]:
    """Per-layer probability that the selected mixer is a dominant operator.

    Entry p-1 is (#runs whose layer-p mixer label is in that run's dominant
    set) / (#runs with at least p layers); NaN when no run is that deep.
    Collective-mixer selections never count as members.
    """
    if len(runs) != len(sets):
        raise ValueError(
            f"got {len(runs)} runs but {len(sets)} dominant sets; "
            "inputs must be aligned by instance"
        )
    probs = []
    for p in range(1, max_layer + 1):
        total = 0
        members = 0
        for record, dom in zip(runs, sets):
            if len(record.layers) < p:
                continue
            total += 1
            if record.layers[p - 1].mixer in dom.labels:
                members += 1
        probs.append(members / total if total else float("nan"))
    return probs
