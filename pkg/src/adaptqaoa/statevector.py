"""Exact 2^n-amplitude statevector simulation.

Amplitudes are indexed by computational bitstring with qubit 0 as the
least-significant bit.  All operations are functional: they return a new
StateVector and leave the input untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, PauliSum

MAX_QUBITS = 20


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass
class CostDiagonal:
    """Real diagonal of a classical cost operator, one entry per bitstring."""

    n: int
    values: np.ndarray


def _check_sizes(n1: int, n2: int) -> None:
    if n1 != n2:
        raise ValueError(f"qubit counts differ: {n1} vs {n2}")


def plus_state(n: int) -> StateVector:
    """Uniform superposition |+>^n."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    dim = 1 << n
    return StateVector(n, np.full(dim, 2.0 ** (-n / 2.0), dtype=complex))


def basis_state(n: int, bitstring: int) -> StateVector:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[bitstring] = 1.0
    return StateVector(n, amps)


def apply_cost_phase(s: StateVector, d: CostDiagonal, gamma: float) -> StateVector:
    """Diagonal evolution exp(-i * gamma * D) applied amplitude-wise."""
    _check_sizes(s.n, d.n)
    return StateVector(s.n, s.amplitudes * np.exp(-1j * gamma * d.values))


def _parity(v: np.ndarray) -> np.ndarray:
    """Bitwise parity of each entry of an int64 array."""
    v = v.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def _pauli_action(amps: np.ndarray, n: int, p: PauliString) -> np.ndarray:
    """Amplitudes of P|psi> using the symplectic masks.

    P permutes basis states by XOR with the X mask and attaches the phase
    i^{p.phase + |x&z|} * (-1)^{|index & z|}.
    """
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    sign = 1.0 - 2.0 * _parity(idx & p.z_mask)
    phase = 1j ** ((p.phase + (p.x_mask & p.z_mask).bit_count()) % 4)
    out = np.empty(dim, dtype=complex)
    out[idx ^ p.x_mask] = phase * sign * amps
    return out


def apply_pauli(s: StateVector, p: PauliString) -> StateVector:
    _check_sizes(s.n, p.n)
    return StateVector(s.n, _pauli_action(s.amplitudes, s.n, p))


def apply_pauli_sum(s: StateVector, a: PauliSum) -> StateVector:
    """(sum_t c_t P_t)|psi>; the result is generally unnormalized."""
    _check_sizes(s.n, a.n)
    out = np.zeros_like(s.amplitudes)
    for ps, coeff in a.items():
        out += coeff * _pauli_action(s.amplitudes, s.n, ps)
    return StateVector(s.n, out)


def apply_pauli_rotation(s: StateVector, p: PauliString, beta: float) -> StateVector:
    """exp(-i * beta * P)|psi> = cos(beta)|psi> - i sin(beta) P|psi>.

    Exact because every Pauli string squares to the identity.  Requires a
    phaseless (Hermitian) string.
    """
    _check_sizes(s.n, p.n)
    if p.phase != 0:
        raise ValueError("rotation generator must be a phaseless (Hermitian) string")
    rotated = np.cos(beta) * s.amplitudes - 1j * np.sin(beta) * _pauli_action(
        s.amplitudes, s.n, p
    )
    return StateVector(s.n, rotated)


def apply_pauli_sum_rotation(s: StateVector, a: PauliSum, beta: float) -> StateVector:
    """exp(-i * beta * A) for a PauliSum A whose terms all commute.

    The exponential factorizes exactly into per-term rotations; pairwise
    commutation is validated rather than trusted, and coefficients must be
    real so each factor is a proper rotation.
    """
    _check_sizes(s.n, a.n)
    terms = list(a.items())
    for i in range(len(terms)):
        ci = terms[i][1]
        if abs(ci.imag) > 1e-12 * max(1.0, abs(ci)):
            raise ValueError("rotation generator must be Hermitian (real coefficients)")
        for j in range(i + 1, len(terms)):
            if not terms[i][0].commutes_with(terms[j][0]):
                raise ValueError(
                    f"terms {terms[i][0].label} and {terms[j][0].label} do not commute; "
                    "the product of per-term rotations would not be exact"
                )
    out = s
    for ps, coeff in terms:
        out = apply_pauli_rotation(out, ps, beta * coeff.real)
    return out


def expectation(s: StateVector, d: CostDiagonal) -> float:
    _check_sizes(s.n, d.n)
    return float(np.dot(d.values, np.abs(s.amplitudes) ** 2))


def flip_expectation(s: StateVector) -> float:
    """Expectation of the global bit-flip operator (X on every site)."""
    full = (1 << s.n) - 1
    idx = np.arange(1 << s.n, dtype=np.int64)
    value = np.vdot(s.amplitudes, s.amplitudes[idx ^ full])
    return float(value.real)


def gradient_component(
    s: StateVector,
    d: CostDiagonal,
    a: PauliString | PauliSum,
    gamma0: float,
) -> float:
    """Energy derivative with respect to a freshly appended mixer angle.

    With |psi'> = exp(-i * gamma0 * D)|psi>, returns
    -i <psi'|[D, A]|psi'> = 2 Im <psi'| D A |psi'>, which equals
    d<D>/d(beta) at beta = 0 for the layer exp(-i*A*beta) exp(-i*D*gamma0).
    """
    _check_sizes(s.n, d.n)
    shifted = apply_cost_phase(s, d, gamma0)
    if isinstance(a, PauliString):
        if a.phase % 2 != 0:
            raise ValueError("gradient generator must be Hermitian")
        applied = apply_pauli(shifted, a)
    else:
        if not a.is_hermitian():
            raise ValueError("gradient generator must be Hermitian")
        applied = apply_pauli_sum(shifted, a)
    weighted = d.values * shifted.amplitudes
    return float(2.0 * np.vdot(weighted, applied.amplitudes).imag)
