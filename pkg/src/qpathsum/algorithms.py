"""Deutsch's and Grover's algorithms, as circuits and as amplitude dynamics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import NOT, BitFlipOracle, Circuit, Hadamard, PhaseOracle, bit
from .pathsum import Path, enumerate_paths, propagator_column


@dataclass(frozen=True)
class GroverInstance:
    n: int
    w: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        if not 0 <= self.w < self.N:
            raise ValueError(f"marked item {self.w} outside [0, {self.N})")

    @property
    def N(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class AmplitudeProfile:
    amplitudes: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def uniform(cls, N: int) -> "AmplitudeProfile":
        return cls(np.full(N, 1 / np.sqrt(N), dtype=complex))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def success_probability(self, w: int) -> float:
        return float(abs(self.amplitudes[w]) ** 2)


# -- Deutsch ---------------------------------------------------------------

@dataclass(frozen=True)
class DeutschResult:
    verdict: str
    outcome: int
    probability: float
    paths: list[Path] = field(repr=False)


def deutsch_circuit(f: tuple[int, int]) -> Circuit:
    """Two-qubit Deutsch circuit: NOT on the ancilla, H on both, O_f, H on qubit 0."""
    oracle = BitFlipOracle(tuple(f), target=1)
    return Circuit(2, [NOT(1), Hadamard(0), Hadamard(1), oracle, Hadamard(0)])


def deutsch_run(f: tuple[int, int]) -> DeutschResult:
    """Decide whether ``f: {0,1} -> {0,1}`` is constant or balanced with one query.

    The trace holds every path from ``|00>`` with its sign; the first qubit is
    measured.
    """
    f = tuple(int(v) for v in f)
    if len(f) != 2 or any(v not in (0, 1) for v in f):
        raise ValueError(f"f must be a 2-entry truth table of bits, got {f}")
    circuit = deutsch_circuit(f)
    column = propagator_column(circuit, 0)
    p_one = float(sum(abs(column[z]) ** 2 for z in range(4) if bit(z, 0, 2)))
    outcome = 1 if p_one > 0.5 else 0
    paths = [p for z_out in range(4) for p in enumerate_paths(circuit, 0, z_out)]
    return DeutschResult(
        verdict="balanced" if outcome else "constant",
        outcome=outcome,
        probability=p_one if outcome else 1.0 - p_one,
        paths=paths,
    )


def bitflip_to_phase_oracle(oracle: BitFlipOracle, n: int) -> PhaseOracle:
    """Phase oracle equal to ``H_t O_f H_t`` (phase kickback on the target).

    The result flips the sign of ``|x, q>`` exactly when ``f(x) = q = 1``.
    """
    table = []
    for z in range(2**n):
        table.append(oracle.table[oracle.input_index(z, n)] & bit(z, oracle.target, n))
    return PhaseOracle(tuple(table))


# -- Grover ----------------------------------------------------------------

def grover_step_element(instance: GroverInstance, z_out: int, z_in: int) -> float:
    """``<z_out| U_D O_w |z_in> = (-1)^{[z_in = w]} (2/N - [z_out = z_in])``."""
    N = instance.N
    if not (0 <= z_in < N and 0 <= z_out < N):
        raise ValueError("basis index out of range")
    sign = -1.0 if z_in == instance.w else 1.0
    return sign * (2.0 / N - (1.0 if z_out == z_in else 0.0))


def grover_step_matrix(instance: GroverInstance) -> np.ndarray:
    N = instance.N
    return np.array([[grover_step_element(instance, zo, zi) for zi in range(N)] for zo in range(N)])


def grover_iterate(profile: AmplitudeProfile, instance: GroverInstance) -> AmplitudeProfile:
    """One oracle + diffusion step: flip the marked sign, then reflect about the mean."""
    a = np.array(profile.amplitudes)
    if a.shape != (instance.N,):
        raise ValueError(f"profile has {a.size} amplitudes, instance has N={instance.N}")
    a[instance.w] = -a[instance.w]
    return AmplitudeProfile(2 * a.mean() - a, profile.iteration + 1)


def grover_success_curve(instance: GroverInstance, k_max: int) -> list[tuple[int, float]]:
    """Success probability ``|a_w|^2`` after ``k = 0..k_max`` iterations from ``|s>``."""
    if not 0 <= k_max <= 10_000:
        raise ValueError(f"k_max must lie in [0, 10000], got {k_max}")
    profile = AmplitudeProfile.uniform(instance.N)
    curve = [(0, profile.success_probability(instance.w))]
    for k in range(1, k_max + 1):
        profile = grover_iterate(profile, instance)
        curve.append((k, profile.success_probability(instance.w)))
    return curve


def grover_circuit(instance: GroverInstance, iterations: int) -> Circuit:
    """Gate-level Grover circuit from ``|0...0>``: H^n, then (O_w, H^n, U_A, H^n) repeated."""
    n, N = instance.n, instance.N
    layer = [Hadamard(j) for j in range(n)]
    oracle = PhaseOracle(tuple(int(z == instance.w) for z in range(N)))
    # U_A = 2|0><0| - I flips every sign except |0...0>
    reflect_zero = PhaseOracle(tuple(int(z != 0) for z in range(N)))
    gates = list(layer)
    for _ in range(iterations):
        gates += [oracle, *layer, reflect_zero, *layer]
    return Circuit(n, gates)
