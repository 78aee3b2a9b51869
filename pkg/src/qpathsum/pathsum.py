"""Sum-over-paths evaluation of circuit propagators.

Each gate is a local rule sending a basis state to its allowed successors.
Classical gates (NOT, CNOT, Toffoli, bit-flip oracles) have one successor and
only constrain which paths exist; a Hadamard branches every path in two and
contributes ``pi * q * q'`` to the action; a phase oracle contributes
``pi * f(z)``.  A path's amplitude is therefore ``2**(-k/2) * exp(i*S)`` with
``k`` the number of Hadamards and ``S`` an integer multiple of pi, so
propagator elements reduce to signed path counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .gates import CNOT, NOT, BitFlipOracle, Circuit, Hadamard, PhaseOracle, Toffoli, bit, check_gate, flip

MAX_PATH_EXPONENT = 24


class PathBudgetExceeded(RuntimeError):
    def __init__(self, hadamards: int, limit: int = MAX_PATH_EXPONENT):
        self.hadamards = hadamards
        self.limit = limit
        super().__init__(
            f"circuit has k={hadamards} Hadamard gates: 2^{hadamards} paths exceeds the 2^{limit} budget"
        )


@dataclass(frozen=True)
class Path:
    """A discrete trajectory ``z^(0), ..., z^(M)`` through basis states.

    ``action`` is in radians (a multiple of pi) and ``log2_magnitude`` is
    ``-k/2`` for ``k`` Hadamards traversed.
    """

    states: tuple[int, ...]
    action: float
    log2_magnitude: float

    @property
    def amplitude(self) -> complex:
        mag = 2.0**self.log2_magnitude
        turns = self.action / math.pi
        if turns == round(turns):
            # exact +-1 for the pi-multiples produced by H/Toffoli circuits
            return complex(mag * (-1) ** round(turns))
        return mag * complex(np.exp(1j * self.action))

    @property
    def sign(self) -> int:
        return 1 if round(self.action / math.pi) % 2 == 0 else -1


# A compiled rule returns (successor, pi-multiple of the phase) pairs.
Rule = Callable[[int], tuple[tuple[int, int], ...]]


def _compile(gate, n: int) -> tuple[Rule, bool]:
    check_gate(gate, n)
    if isinstance(gate, Hadamard):
        t = gate.target

        def rule(z):
            q = bit(z, t, n)
            z0 = z & ~(1 << (n - 1 - t))
            z1 = z0 | (1 << (n - 1 - t))
            # successor with q'=0 first, phase pi*q*q'
            return ((z0, 0), (z1, q))

        return rule, True
    if isinstance(gate, NOT):
        t = gate.target
        return (lambda z: ((flip(z, t, n), 0),)), False
    if isinstance(gate, CNOT):
        c, t = gate.control, gate.target
        return (lambda z: ((flip(z, t, n) if bit(z, c, n) else z, 0),)), False
    if isinstance(gate, Toffoli):
        c1, c2, t = gate.control1, gate.control2, gate.target
        return (lambda z: ((flip(z, t, n) if bit(z, c1, n) & bit(z, c2, n) else z, 0),)), False
    if isinstance(gate, PhaseOracle):
        table = gate.table
        return (lambda z: ((z, table[z]),)), False
    if isinstance(gate, BitFlipOracle):
        table, t = gate.table, gate.target
        return (lambda z: ((flip(z, t, n) if table[gate.input_index(z, n)] else z, 0),)), False
    raise TypeError(f"unknown gate {gate!r}")


def local_rule_successors(gate, z: int, n: int) -> list[tuple[int, complex]]:
    """Successors of ``|z>`` under one gate with their transition amplitudes.

    >>> local_rule_successors(Hadamard(0), 1, 1)
    [(0, (0.7071067811865475+0j)), (1, (-0.7071067811865475+0j))]
    """
    if not 0 <= z < 2**n:
        raise ValueError(f"basis index {z} outside [0, {2**n})")
    rule, branching = _compile(gate, n)
    mag = 1 / math.sqrt(2) if branching else 1.0
    return [(z2, complex(mag * (-1) ** p)) for z2, p in rule(z)]


def _check_budget(circuit: Circuit) -> int:
    k = circuit.hadamard_count
    if k > MAX_PATH_EXPONENT:
        raise PathBudgetExceeded(k)
    return k


def _check_index(z: int, n: int, name: str) -> None:
    if not 0 <= z < 2**n:
        raise ValueError(f"{name}={z} outside [0, {2**n})")


def iter_paths(circuit: Circuit, z_in: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Depth-first walk over all allowed paths from ``z_in``.

    Yields ``(states, phase_count)``; the action is ``pi * phase_count``.
    """
    _check_index(z_in, circuit.n, "z_in")
    _check_budget(circuit)
    rules = [_compile(g, circuit.n)[0] for g in circuit.gates]
    depth = len(rules)
    states = [z_in] + [0] * depth

    def walk(level: int, z: int, phase: int):
        if level == depth:
            yield tuple(states), phase
            return
        for z2, p in rules[level](z):
            states[level + 1] = z2
            yield from walk(level + 1, z2, phase + p)

    yield from walk(0, z_in, 0)


def enumerate_paths(circuit: Circuit, z_in: int, z_out: int) -> list[Path]:
    """All allowed paths from ``z_in`` to ``z_out``, in deterministic DFS order.

    Raises :class:`PathBudgetExceeded` when the circuit has more than 24
    Hadamards.
    """
    _check_index(z_out, circuit.n, "z_out")
    k = circuit.hadamard_count
    return [
        Path(states, math.pi * phase, -k / 2)
        for states, phase in iter_paths(circuit, z_in)
        if states[-1] == z_out
    ]


def _signed_counts(circuit: Circuit, z_in: int) -> np.ndarray:
    """Net signed path count into every final basis state."""
    _check_index(z_in, circuit.n, "z_in")
    _check_budget(circuit)
    rules = [_compile(g, circuit.n)[0] for g in circuit.gates]
    counts = np.zeros(2**circuit.n, dtype=np.int64)
    depth = len(rules)

    # explicit stack: (level, state, phase parity)
    stack = [(0, z_in, 0)]
    while stack:
        level, z, phase = stack.pop()
        if level == depth:
            counts[z] += -1 if phase & 1 else 1
            continue
        for z2, p in reversed(rules[level](z)):
            stack.append((level + 1, z2, phase + p))
    return counts


def propagator_element(circuit: Circuit, z_in: int, z_out: int) -> complex:
    """``<z_out|U|z_in>`` as a sum over allowed paths of ``2**(-k/2) e^{iS}``."""
    _check_index(z_out, circuit.n, "z_out")
    counts = _signed_counts(circuit, z_in)
    return complex(counts[z_out] * 2.0 ** (-circuit.hadamard_count / 2))


def propagator_column(circuit: Circuit, z_in: int) -> np.ndarray:
    """``<z|U|z_in>`` for every ``z``, from a single path enumeration."""
    return _signed_counts(circuit, z_in) * 2.0 ** (-circuit.hadamard_count / 2) + 0j


def propagator_matrix(circuit: Circuit, workers: int = 1) -> np.ndarray:
    """Full propagator by path sums, one enumeration per input state.

    With ``workers > 1`` the input states are spread over a process pool;
    columns are gathered by index so the result does not depend on scheduling.
    """
    dim = 2**circuit.n
    _check_budget(circuit)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cols = list(pool.map(propagator_column, [circuit] * dim, range(dim)))
    else:
        cols = [propagator_column(circuit, z) for z in range(dim)]
    return np.column_stack(cols)


def qft_element(group: str, n: int, z_in: int, z_out: int) -> complex:
    """Matrix element of the Fourier transform over ``(Z_2)^n`` or ``Z_{2^n}``.

    ``group="Z2n"`` gives the Hadamard transform ``2^{-n/2} e^{i pi q.q'}``;
    ``group="ZN"`` gives ``2^{-n/2} e^{2 pi i z z' / 2^n}``.
    """
    _check_index(z_in, n, "z_in")
    _check_index(z_out, n, "z_out")
    scale = 2.0 ** (-n / 2)
    if group == "Z2n":
        return complex(scale * (-1) ** bin(z_in & z_out).count("1"))
    if group == "ZN":
        # reduce mod N before the exponential to keep the phase exact
        return complex(scale * np.exp(2j * np.pi * ((z_in * z_out) % 2**n) / 2**n))
    raise ValueError(f"group must be 'Z2n' or 'ZN', got {group!r}")


def qft_matrix(group: str, n: int) -> np.ndarray:
    dim = 2**n
    return np.array([[qft_element(group, n, zi, zo) for zi in range(dim)] for zo in range(dim)])
