"""Exact symbolic algebra of n-qubit Pauli strings and real-weighted sums of them.

A Pauli string is stored in symplectic form: an X bit-mask, a Z bit-mask and a
phase that is a power of i.  Qubit ``i`` carries X if only the X bit is set,
Z if only the Z bit is set, Y if both are set, and identity if neither is.
The phaseless operator attached to the masks is the tensor product with Y on
the overlap bits, i.e. ``i^{|x&z|} * X^x * Z^z``, so that ``(x=1, z=1)`` is
exactly Y and every phaseless string is Hermitian.

Sums of strings keep phaseless masks as dictionary keys and fold any string
phase into the complex coefficient, which keeps term keys canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

# Coefficients below this are treated as exact zeros and pruned.
COEFF_TOL = 1e-12

_AXIS_FROM_BITS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS_FROM_AXIS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

_SINGLE_QUBIT_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power-of-i picked up when multiplying two phaseless strings.

    Writing each string as i^{|x&z|} X^x Z^z, commuting the inner Z^z1 past
    X^x2 gives (-1)^{|z1&x2|}, and re-normalizing the result back to the
    Y-canonical form absorbs i^{|x&z|} factors.
    """
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    return (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (z1 & x2).bit_count()
    ) % 4


def _anticommute(x1: int, z1: int, x2: int, z2: int) -> bool:
    """Symplectic-form parity: strings anticommute iff it is odd."""
    return ((x1 & z2).bit_count() + (x2 & z1).bit_count()) % 2 == 1


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator ``i^phase * P(x_mask, z_mask)``.

    ``phase`` is the exponent of i, stored mod 4.
    """

    n: int
    x_mask: int
    z_mask: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValueError(f"mask has bits outside the {self.n}-qubit register")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, site: int, axis: str) -> "PauliString":
        """One non-identity axis ('X', 'Y' or 'Z') at ``site``."""
        if not 0 <= site < n:
            raise ValueError(f"site {site} outside register of {n} qubits")
        xb, zb = _BITS_FROM_AXIS[axis.upper()]
        return cls(n, xb << site, zb << site)

    @classmethod
    def from_label(cls, label: str, n: int) -> "PauliString":
        """Parse a site-indexed label such as 'Y0Z3'; 'I' is the identity."""
        if label == "I":
            return cls.identity(n)
        x_mask = z_mask = 0
        i = 0
        while i < len(label):
            axis = label[i].upper()
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"bad axis {axis!r} in label {label!r}")
            j = i + 1
            while j < len(label) and label[j].isdigit():
                j += 1
            if j == i + 1:
                raise ValueError(f"missing site index in label {label!r}")
            site = int(label[i + 1 : j])
            if site >= n:
                raise ValueError(f"site {site} outside register of {n} qubits")
            bit = 1 << site
            if (x_mask | z_mask) & bit:
                raise ValueError(f"duplicate site {site} in label {label!r}")
            xb, zb = _BITS_FROM_AXIS[axis]
            x_mask |= xb * bit
            z_mask |= zb * bit
            i = j
        return cls(n, x_mask, z_mask)

    def axis(self, site: int) -> str:
        return _AXIS_FROM_BITS[((self.x_mask >> site) & 1, (self.z_mask >> site) & 1)]

    @property
    def label(self) -> str:
        """Site-indexed rendering, e.g. 'Y0Z3'; identity renders as 'I'."""
        parts = [
            f"{self.axis(i)}{i}" for i in range(self.n) if self.axis(i) != "I"
        ]
        return "".join(parts) if parts else "I"

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def y_count(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def phase_factor(self) -> complex:
        return 1j ** self.phase

    def phaseless(self) -> "PauliString":
        return PauliString(self.n, self.x_mask, self.z_mask, 0)

    def commutes_with(self, other: "PauliString") -> bool:
        _check_same_size(self.n, other.n)
        return not _anticommute(self.x_mask, self.z_mask, other.x_mask, other.z_mask)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        prefix = ["", "i*", "-", "-i*"][self.phase]
        return prefix + self.label


def _check_same_size(n1: int, n2: int) -> None:
    if n1 != n2:
        raise ValueError(f"qubit counts differ: {n1} vs {n2}")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Pauli group product p*q with the accumulated power-of-i phase."""
    _check_same_size(p.n, q.n)
    g = _product_phase(p.x_mask, p.z_mask, q.x_mask, q.z_mask)
    return PauliString(
        p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, (p.phase + q.phase + g) % 4
    )


def commutes_with_flip(p: PauliString) -> bool:
    """Whether p commutes with the global bit-flip operator (X on every site).

    Conjugation by X flips the sign of Y and Z, so p commutes exactly when
    the number of Y sites plus the number of Z sites is even.  That count is
    the popcount of the Z mask.
    """
    return p.z_mask.bit_count() % 2 == 0


def flip_operator(n: int) -> PauliString:
    """The all-X string implementing the global bit flip."""
    return PauliString(n, (1 << n) - 1, 0)


class PauliSum:
    """A complex-weighted sum of phaseless Pauli strings on n qubits.

    Term keys are (x_mask, z_mask) pairs; any string phase is folded into the
    coefficient on insertion and terms below ``COEFF_TOL`` are pruned.
    Instances are treated as immutable by every public operation.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: dict[tuple[int, int], complex] | None = None):
        self.n = n
        self._terms: dict[tuple[int, int], complex] = {}
        if terms:
            for key, coeff in terms.items():
                self._accumulate(key, coeff)
        self._prune()

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[PauliString, complex]], n: int | None = None) -> "PauliSum":
        terms = list(terms)
        if n is None:
            if not terms:
                raise ValueError("cannot infer qubit count from an empty term list")
            n = terms[0][0].n
        out = cls(n)
        for ps, coeff in terms:
            _check_same_size(n, ps.n)
            out._accumulate((ps.x_mask, ps.z_mask), coeff * ps.phase_factor())
        out._prune()
        return out

    @classmethod
    def from_string(cls, ps: PauliString, coeff: complex = 1.0) -> "PauliSum":
        return cls.from_terms([(ps, coeff)])

    def _accumulate(self, key: tuple[int, int], coeff: complex) -> None:
        new = self._terms.get(key, 0j) + coeff
        if new == 0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = new

    def _prune(self) -> None:
        dead = [k for k, c in self._terms.items() if abs(c) <= COEFF_TOL]
        for k in dead:
            del self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self) -> Iterator[tuple[PauliString, complex]]:
        for (x, z), coeff in self._terms.items():
            yield PauliString(self.n, x, z), coeff

    def sorted_items(self) -> list[tuple[PauliString, complex]]:
        """Terms in canonical label order (deterministic rendering)."""
        pairs = [(PauliString(self.n, x, z), c) for (x, z), c in self._terms.items()]
        pairs.sort(key=lambda pc: pc[0].label)
        return pairs

    def coefficient(self, ps: PauliString) -> complex:
        return self._terms.get((ps.x_mask, ps.z_mask), 0j) * ps.phase_factor().conjugate()

    def __add__(self, other: "PauliSum") -> "PauliSum":
        _check_same_size(self.n, other.n)
        out = PauliSum(self.n, dict(self._terms))
        for key, coeff in other._terms.items():
            out._accumulate(key, coeff)
        out._prune()
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "PauliSum":
        out = PauliSum(self.n)
        for key, coeff in self._terms.items():
            out._terms[key] = scalar * coeff
        out._prune()
        return out

    def __neg__(self) -> "PauliSum":
        return (-1.0) * self

    def __mul__(self, other) -> "PauliSum":
        if not isinstance(other, PauliSum):
            return self.__rmul__(other)
        _check_same_size(self.n, other.n)
        out = PauliSum(self.n)
        for (x1, z1), c1 in self._terms.items():
            for (x2, z2), c2 in other._terms.items():
                g = _product_phase(x1, z1, x2, z2)
                out._accumulate((x1 ^ x2, z1 ^ z2), c1 * c2 * (1j ** g))
        out._prune()
        return out

    def commutator_with(self, other: "PauliSum") -> "PauliSum":
        """[self, other], using that Pauli strings either commute or flip sign."""
        _check_same_size(self.n, other.n)
        out = PauliSum(self.n)
        for (x1, z1), c1 in self._terms.items():
            for (x2, z2), c2 in other._terms.items():
                if not _anticommute(x1, z1, x2, z2):
                    continue
                g = _product_phase(x1, z1, x2, z2)
                out._accumulate((x1 ^ x2, z1 ^ z2), 2.0 * c1 * c2 * (1j ** g))
        out._prune()
        return out

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def equals(self, other: "PauliSum", tol: float = 1e-12) -> bool:
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol for k in keys
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c:.6g})*{ps.label}" for ps, c in self.sorted_items())


def commutator(p: PauliString, q: PauliString) -> PauliSum:
    """[p, q] as a PauliSum: zero if they commute, 2*p*q otherwise."""
    _check_same_size(p.n, q.n)
    if p.commutes_with(q):
        return PauliSum.zero(p.n)
    return PauliSum.from_string(multiply(p, q), 2.0)


def trace_inner(a: PauliSum, b: PauliSum) -> float:
    """Normalized Hilbert-Schmidt inner product Tr(a^dag b) / 2^n.

    Phaseless Pauli strings are trace-orthonormal under this product, so only
    matching term keys contribute.  Intended for Hermitian inputs; raises if
    the result carries a non-negligible imaginary part.
    """
    _check_same_size(a.n, b.n)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0j
    for key, c_small in small._terms.items():
        c_large = large._terms.get(key)
        if c_large is None:
            continue
        if small is a:
            total += c_small.conjugate() * c_large
        else:
            total += c_large.conjugate() * c_small
    scale = max(1.0, abs(total))
    if abs(total.imag) > 1e-10 * scale:
        raise ValueError(f"trace inner product is not real: {total}")
    return total.real


def nested_commutator_sum(h: PauliSum, g: PauliSum, depth: int) -> PauliSum:
    """depth-fold nested commutator [h, [h, ... [h, g]]]."""
    if depth < 1:
        raise ValueError(f"nesting depth must be >= 1, got {depth}")
    _check_same_size(h.n, g.n)
    out = g
    for _ in range(depth):
        out = h.commutator_with(out)
    return out


def sum_x(n: int) -> PauliSum:
    """Collective mixer: sum of X on every site."""
    return PauliSum.from_terms(
        [(PauliString.single(n, i, "X"), 1.0) for i in range(n)], n
    )


def sum_y(n: int) -> PauliSum:
    """Sum of Y on every site (fails the flip-symmetry filter)."""
    return PauliSum.from_terms(
        [(PauliString.single(n, i, "Y"), 1.0) for i in range(n)], n
    )


def string_to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix; qubit 0 is the least-significant bit."""
    out = np.ones((1, 1), dtype=complex)
    for site in range(p.n - 1, -1, -1):
        out = np.kron(out, _SINGLE_QUBIT_MATS[p.axis(site)])
    return p.phase_factor() * out


def sum_to_matrix(s: PauliSum) -> np.ndarray:
    """Dense matrix of a PauliSum; only sensible for small n."""
    dim = 1 << s.n
    out = np.zeros((dim, dim), dtype=complex)
    for ps, coeff in s.items():
        out += coeff * string_to_matrix(ps)
    return out
