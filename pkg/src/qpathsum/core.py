"""Dense state-vector reference simulator.

Everything else in the package is checked against the matrices built here.
Gate matrices are assembled from Kronecker products of single-qubit blocks
and projectors, never from the bit-twiddling rules the path-sum engine uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable

import numpy as np

from .gates import CNOT, NOT, BitFlipOracle, Circuit, Hadamard, PhaseOracle, Toffoli, check_gate

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10
MAX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"dense simulation supports 1..{MAX_QUBITS} qubits, got {n}")


@dataclass(frozen=True)
class QuantumState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, z: int) -> "QuantumState":
        amps = np.zeros(2**n, dtype=complex)
        amps[z] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int) -> "QuantumState":
        return cls(n, np.full(2**n, 2 ** (-n / 2), dtype=complex))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def overlap(self, other: "QuantumState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DenseOperator:
    """A ``2**n x 2**n`` matrix with optional unitary / hermitian flags.

    Flags are claims; ``check()`` verifies them at the module tolerances.
    """

    n: int
    matrix: np.ndarray
    unitary: bool = False
    hermitian: bool = False

    def __post_init__(self):
        _check_n(self.n)
        m = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.n
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, n: int) -> "DenseOperator":
        return cls(n, np.eye(2**n, dtype=complex), unitary=True, hermitian=True)

    @cached_property
    def unitarity_error(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))

    @cached_property
    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def check(self) -> None:
        if self.unitary and self.unitarity_error > UNITARY_TOL:
            raise ValueError(f"operator flagged unitary but |U^dag U - I| = {self.unitarity_error:.3g}")
        if self.hermitian and self.hermiticity_error > HERMITIAN_TOL:
            raise ValueError(f"operator flagged hermitian but |H - H^dag| = {self.hermiticity_error:.3g}")

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n} qubits")
        return DenseOperator(self.n, self.matrix @ other.matrix, unitary=self.unitary and other.unitary)

    def element(self, z_out: int, z_in: int) -> complex:
        return complex(self.matrix[z_out, z_in])


def kron_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def single_qubit_op(op: np.ndarray, j: int, n: int) -> np.ndarray:
    """Embed a 2x2 ``op`` on qubit ``j`` (qubit 0 is the leftmost Kronecker factor)."""
    return kron_all(op if k == j else I2 for k in range(n))


def _controlled_x(controls: tuple[int, ...], target: int, n: int) -> np.ndarray:
    # I - P + P X_t, with P projecting every control onto |1>
    proj = kron_all(P1 if k in controls else I2 for k in range(n))
    flipped = kron_all(P1 if k in controls else X if k == target else I2 for k in range(n))
    return np.eye(2**n, dtype=complex) - proj + flipped


def _bitflip_oracle_matrix(gate: BitFlipOracle, n: int) -> np.ndarray:
    others = [k for k in range(n) if k != gate.target]
    m = np.zeros((2**n, 2**n), dtype=complex)
    for x, fx in enumerate(gate.table):
        bits = format(x, f"0{n - 1}b")
        value = dict(zip(others, bits))
        m += kron_all(
            (X if fx else I2) if k == gate.target else (P1 if value[k] == "1" else P0)
            for k in range(n)
        )
    return m


def gate_matrix(gate, n: int) -> np.ndarray:
    check_gate(gate, n)
    if isinstance(gate, Hadamard):
        return single_qubit_op(H, gate.target, n)
    if isinstance(gate, NOT):
        return single_qubit_op(X, gate.target, n)
    if isinstance(gate, CNOT):
        return _controlled_x((gate.control,), gate.target, n)
    if isinstance(gate, Toffoli):
        return _controlled_x((gate.control1, gate.control2), gate.target, n)
    if isinstance(gate, PhaseOracle):
        return np.diag([(-1.0) ** f for f in gate.table]).astype(complex)
    if isinstance(gate, BitFlipOracle):
        return _bitflip_oracle_matrix(gate, n)
    raise TypeError(f"unknown gate {gate!r}")


def dense_apply(op: DenseOperator, state: QuantumState) -> QuantumState:
    """Apply a unitary operator to a state.

    Raises ``ValueError`` on a register mismatch, when ``op`` is not flagged
    unitary, or when the flag is wrong.
    """
    if op.n != state.n:
        raise ValueError(f"dimension mismatch: operator on {op.n} qubits, state on {state.n}")
    if not op.unitary:
        raise ValueError("dense_apply requires an operator flagged unitary")
    op.check()
    out = QuantumState(state.n, op.matrix @ state.amplitudes)
    drift = abs(out.norm - state.norm)
    if drift > UNITARY_TOL:
        raise ValueError(f"norm drift {drift:.3g} after unitary application")
    return out


def dense_propagator(circuit: Circuit) -> DenseOperator:
    """``U = U_M ... U_1`` for the gates of ``circuit`` in time order."""
    dim = 2**circuit.n
    _check_n(circuit.n)
    u = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        u = gate_matrix(gate, circuit.n) @ u
    return DenseOperator(circuit.n, u, unitary=True)


def matrix_exponential_hermitian(h: DenseOperator, t: float) -> DenseOperator:
    """``exp(-i t H)`` by eigendecomposition of a hermitian ``H``."""
    if h.hermiticity_error > HERMITIAN_TOL:
        raise ValueError(f"matrix is not hermitian: |H - H^dag| = {h.hermiticity_error:.3g}")
    evals, evecs = np.linalg.eigh(h.matrix)
    u = (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T
    return DenseOperator(h.n, u, unitary=True)


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """Array version of :func:`matrix_exponential_hermitian` (no flag checks)."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def normalize_global_phase(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate ``a`` so its first entry with modulus above ``tol`` is positive real."""
    flat = np.asarray(a, dtype=complex).reshape(-1)
    idx = np.flatnonzero(np.abs(flat) > tol)
    if idx.size == 0:
        return np.asarray(a, dtype=complex)
    phase = flat[idx[0]] / abs(flat[idx[0]])
    return np.asarray(a, dtype=complex) / phase


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-10) -> bool:
    return bool(np.allclose(normalize_global_phase(a), normalize_global_phase(b), rtol=0, atol=atol))
