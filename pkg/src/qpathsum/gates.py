"""Gate descriptions shared by the dense simulator and the path-sum engine.

Qubit ``j`` (0-indexed) is the ``j``-th most significant bit of a basis index
``z``, so ``|z> = |q_1 ... q_n>`` with ``q_{j+1} = (z >> (n - 1 - j)) & 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np


def bit(z: int, j: int, n: int) -> int:
    """Value of qubit ``j`` in basis index ``z`` of an ``n``-qubit register."""
    return (z >> (n - 1 - j)) & 1


def flip(z: int, j: int, n: int) -> int:
    return z ^ (1 << (n - 1 - j))


def to_bits(z: int, n: int) -> str:
    return format(z, f"0{n}b")


def from_bits(bits: str) -> int:
    return int(bits, 2)


@dataclass(frozen=True)
class BasisState:
    """Computational basis state ``|z>`` of an ``n``-qubit register."""

    n: int
    z: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        if not 0 <= self.z < 2**self.n:
            raise ValueError(f"basis index {self.z} outside [0, {2**self.n})")

    @property
    def bits(self) -> str:
        return to_bits(self.z, self.n)

    def qubit(self, j: int) -> int:
        return bit(self.z, j, self.n)

    def __str__(self):
        return f"|{self.bits}>"


def _table(values) -> tuple[int, ...]:
    table = tuple(int(v) for v in values)
    if any(v not in (0, 1) for v in table):
        raise ValueError("truth table entries must be 0 or 1")
    size = len(table)
    if size == 0 or size & (size - 1):
        raise ValueError(f"truth table length must be a power of two, got {size}")
    return table


@dataclass(frozen=True)
class Hadamard:
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class NOT:
    target: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("control and target must differ")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class Toffoli:
    control1: int
    control2: int
    target: int

    def __post_init__(self):
        if len({self.control1, self.control2, self.target}) != 3:
            raise ValueError("Toffoli qubits must be distinct")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control1, self.control2, self.target)


@dataclass(frozen=True)
class PhaseOracle:
    """``|z> -> (-1)^{f(z)} |z>`` for a truth table ``f`` over the whole register."""

    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", _table(self.table))

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(range(self.width))

    @property
    def width(self) -> int:
        return len(self.table).bit_length() - 1


@dataclass(frozen=True)
class BitFlipOracle:
    """``|x, q> -> |x, q XOR f(x)>``.

    ``x`` is read from every register qubit except ``target``, most significant
    first, so ``table`` has ``2**(n-1)`` entries.
    """

    table: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "table", _table(self.table))

    @property
    def width(self) -> int:
        return len(self.table).bit_length()

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(range(self.width))

    def input_index(self, z: int, n: int) -> int:
        x = 0
        for j in range(n):
            if j != self.target:
                x = (x << 1) | bit(z, j, n)
        return x


Gate = Union[Hadamard, NOT, CNOT, Toffoli, PhaseOracle, BitFlipOracle]


@dataclass(frozen=True)
class Circuit:
    """Gates on an ``n``-qubit register, listed in time order (first applied first)."""

    n: int
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        for g in self.gates:
            check_gate(g, self.n)

    def __len__(self):
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValueError(f"register mismatch: {self.n} vs {other.n}")
        return Circuit(self.n, self.gates + other.gates)

    @property
    def hadamard_count(self) -> int:
        return sum(isinstance(g, Hadamard) for g in self.gates)


def check_gate(gate: Gate, n: int) -> None:
    if isinstance(gate, PhaseOracle):
        if gate.width != n:
            raise ValueError(f"phase oracle over {gate.width} qubits on a {n}-qubit register")
        return
    if isinstance(gate, BitFlipOracle):
        if gate.width != n:
            raise ValueError(f"bit-flip oracle over {gate.width} qubits on a {n}-qubit register")
        if not 0 <= gate.target < n:
            raise ValueError(f"qubit index {gate.target} out of range for n={n}")
        return
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for n={n}")


def random_circuit(
    n: int,
    depth: int,
    rng: np.random.Generator,
    max_hadamards: int | None = None,
    kinds: Sequence[str] = ("H", "TOF"),
) -> Circuit:
    """Random circuit drawn gate by gate from ``kinds``.

    Once ``max_hadamards`` is reached the remaining gates are classical.
    ``"TOF"`` falls back to CNOT/NOT when ``n`` is too small.
    """
    gates = []
    k = 0
    for _ in range(depth):
        kind = kinds[rng.integers(len(kinds))]
        if kind == "H" and max_hadamards is not None and k >= max_hadamards:
            kind = "TOF"
        if kind == "H":
            gates.append(Hadamard(int(rng.integers(n))))
            k += 1
        elif kind == "TOF" and n >= 3:
            c1, c2, t = rng.choice(n, size=3, replace=False)
            gates.append(Toffoli(int(c1), int(c2), int(t)))
        elif n >= 2 and kind in ("TOF", "CNOT"):
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(CNOT(int(c), int(t)))
        else:
            gates.append(NOT(int(rng.integers(n))))
    return Circuit(n, gates)
