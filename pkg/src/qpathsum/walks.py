"""Classical and quantum walks on the line, ring and complete graph.

Coin convention for the discrete-time walk: coin ``0`` (up, R) moves the
walker to ``z + 1`` and coin ``1`` (down, L) to ``z - 1``; each step applies the
Hadamard coin and then the conditional shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .bessel import bessel_j, bessel_j_table

SQRT_HALF = 1 / math.sqrt(2)


@dataclass(frozen=True)
class Graph:
    kind: str
    size: int
    adjacency: np.ndarray

    @cached_property
    def degree(self) -> np.ndarray:
        return np.diag(self.adjacency.sum(axis=1))

    @cached_property
    def laplacian(self) -> np.ndarray:
        """``A - D``; rows sum to zero."""
        return self.adjacency - self.degree

    @classmethod
    def ring(cls, N: int) -> "Graph":
        if N < 3:
            raise ValueError("a ring needs at least 3 vertices")
        A = np.zeros((N, N))
        for z in range(N):
            A[z, (z + 1) % N] = A[(z + 1) % N, z] = 1.0
        return cls("ring", N, A)

    @classmethod
    def hypercube(cls, n: int) -> "Graph":
        N = 2**n
        A = np.zeros((N, N))
        for z in range(N):
            for j in range(n):
                A[z, z ^ (1 << j)] = 1.0
        return cls("hypercube", N, A)

    @classmethod
    def complete(cls, N: int) -> "Graph":
        return cls("complete", N, np.ones((N, N)) - np.eye(N))


# -- classical walk ---------------------------------------------------------

def classical_rw_fractions(n_steps: int) -> dict[int, Fraction]:
    if not 0 <= n_steps <= 1000:
        raise ValueError(f"n_steps must lie in [0, 1000], got {n_steps}")
    denom = 2**n_steps
    return {
        j: Fraction(math.comb(n_steps, (n_steps + j) // 2), denom)
        for j in range(-n_steps, n_steps + 1, 2)
    }


def classical_rw_distribution(n_steps: int) -> dict[int, float]:
    """``phi_j = C(n, (n+j)/2) / 2^n`` on sites with the parity of ``n``.

    Sites of the other parity have probability zero and are omitted.
    """
    return {j: float(p) for j, p in classical_rw_fractions(n_steps).items()}


def gaussian_limit_density(t: float, z):
    """Normal density with variance ``t``: ``exp(-z^2/2t) / sqrt(2 pi t)``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    z = np.asarray(z, dtype=float)
    out = np.exp(-z**2 / (2 * t)) / np.sqrt(2 * np.pi * t)
    return float(out) if out.ndim == 0 else out


# -- continuous-time walk ----------------------------------------------------

def ctqrw_exact(N: int, t: float, d: int) -> complex:
    """Ring propagator ``<z+d| e^{-itA} |z>`` as an eigen-sum over the N Fourier modes.

    ``(1/N) sum_p exp(-2it cos(2 pi p/N)) exp(-2 pi i p d/N)``.  The Laplacian's
    constant diagonal only adds the global phase ``e^{2it}``, which is dropped.
    """
    if not 1 <= N <= 10_000:
        raise ValueError(f"N must lie in [1, 10000], got {N}")
    p = np.arange(N)
    k = 2 * np.pi * p / N
    return complex(np.exp(-2j * t * np.cos(k) - 1j * k * d).sum() / N)


def ctqrw_profile(N: int, t: float) -> np.ndarray:
    """:func:`ctqrw_exact` for every ``d in [0, N)`` via one FFT."""
    k = 2 * np.pi * np.arange(N) / N
    return np.fft.fft(np.exp(-2j * t * np.cos(k))) / N


def ctqrw_bessel(t: float, d: int, laplacian_phase: bool = False) -> complex:
    """Infinite-line kernel ``(-i)^d J_d(2t)``.

    With ``laplacian_phase`` the factor ``e^{2it}`` from the Laplacian's diagonal
    is included.
    """
    if abs(d) > 1000 or t > 100 or t < 0:
        raise ValueError("ctqrw_bessel supports |d| <= 1000 and 0 <= t <= 100")
    value = (-1j) ** (d % 4) * bessel_j(d, 2 * t)
    if laplacian_phase:
        value *= np.exp(2j * t)
    return complex(value)


def bessel_front(t: float, d_max: int | None = None) -> int:
    """Distance ``d >= 0`` maximising ``|J_d(2t)|``: the walk's wavefront."""
    d_max = int(2 * t + 20) if d_max is None else d_max
    return int(np.argmax(np.abs(bessel_j_table(d_max, 2 * t))))


def grover_walk(N: int, gamma: float, T: float) -> float:
    """``|<w| exp(-iHT) |s>|^2`` for ``H = -gamma N |s><s| - |w><w|``.

    The dynamics stays in span{|w>, |r>} with ``|r>`` the uniform state over the
    unmarked items, so only a 2x2 problem is solved.
    """
    if not 2 <= N <= 2**12:
        raise ValueError(f"N must lie in [2, 4096], got {N}")
    a, b = 1 / math.sqrt(N), math.sqrt((N - 1) / N)
    s = np.array([a, b])
    Hsub = -gamma * N * np.outer(s, s) - np.diag([1.0, 0.0])
    evals, evecs = np.linalg.eigh(Hsub)
    psi = evecs @ (np.exp(-1j * T * evals) * (evecs.T @ s))
    return float(min(1.0, abs(psi[0]) ** 2))


# -- discrete-time walk --------------------------------------------------------

@dataclass(frozen=True)
class WalkerState:
    """Amplitudes over positions ``-L..L`` times coin ``{0: up/R, 1: down/L}``."""

    amplitudes: np.ndarray
    steps: int = 0

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 2 or a.shape[1] != 2 or a.shape[0] % 2 != 1:
            raise ValueError("amplitudes must have shape (2L+1, 2)")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def start(cls, coin=(0.0, 1.0)) -> "WalkerState":
        """Walker at the origin with coin state ``coin[0]|up> + coin[1]|down>``."""
        c = np.asarray(coin, dtype=complex)
        c = c / np.linalg.norm(c)
        return cls(c.reshape(1, 2))

    @property
    def half_width(self) -> int:
        return self.amplitudes.shape[0] // 2

    @property
    def positions(self) -> np.ndarray:
        L = self.half_width
        return np.arange(-L, L + 1)

    @property
    def probabilities(self) -> np.ndarray:
        return (np.abs(self.amplitudes) ** 2).sum(axis=1)

    def amplitude(self, z: int) -> tuple[complex, complex]:
        """``(psi_L, psi_R)`` at position ``z``."""
        L = self.half_width
        if abs(z) > L:
            return 0j, 0j
        up, down = self.amplitudes[z + L]
        return complex(down), complex(up)


def dtqrw_step(state: WalkerState) -> WalkerState:
    """Hadamard coin, then shift up-coin right and down-coin left."""
    a = state.amplitudes
    up = (a[:, 0] + a[:, 1]) * SQRT_HALF
    down = (a[:, 0] - a[:, 1]) * SQRT_HALF
    out = np.zeros((a.shape[0] + 2, 2), dtype=complex)
    out[2:, 0] = up
    out[:-2, 1] = down
    return WalkerState(out, state.steps + 1)


def dtqrw_run(n_steps: int, coin=(0.0, 1.0)) -> WalkerState:
    state = WalkerState.start(coin)
    for _ in range(n_steps):
        state = dtqrw_step(state)
    return state


def _comb(n: int, k: int) -> int:
    # C(-1, -1) = 1 counts the empty composition of zero items
    if n == -1 and k == -1:
        return 1
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def dtqrw_combinatorial(n_steps: int, z: int, initial_coin: str = "up") -> tuple[float, float]:
    """Amplitudes ``(psi_L, psi_R)`` at ``z`` after ``n_steps`` by counting signed paths.

    Every path has weight ``2^{-n/2}`` and picks up a ``-1`` for each pair of
    consecutive left moves.  ``psi_L`` collects paths ending with a left move:
    choose ``b`` of the ``n_l - 1`` gaps between left moves to hold right moves
    and distribute the ``n_r`` right moves over those gaps and the leading gap,

        psi_L = 2^{-n/2} sum_b C(n_l-1, b) C(n_r, b) (-1)^{n_l-1-b}.

    ``psi_R`` is the mirror count over runs of left moves.  With
    ``initial_coin="down"`` a path whose first move is left also gets a ``-1``.
    """
    if initial_coin not in ("up", "down"):
        raise ValueError("initial_coin must be 'up' or 'down'")
    if abs(z) > n_steps or (n_steps - z) % 2:
        return 0.0, 0.0
    down = initial_coin == "down"
    if n_steps == 0:
        return (1.0, 0.0) if down else (0.0, 1.0)
    n_l, n_r = (n_steps - z) // 2, (n_steps + z) // 2

    psi_l = 0
    if n_l >= 1:
        for b in range(n_l):
            if down:
                ways = _comb(n_r - 1, b) - _comb(n_r - 1, b - 1)
            else:
                ways = _comb(n_r, b)
            psi_l += _comb(n_l - 1, b) * ways * (-1) ** (n_l - 1 - b)

    psi_r = 0
    if n_r >= 1:
        for k in range(n_l + 1):
            if down:
                ways = _comb(n_r - 1, k) - _comb(n_r - 1, k - 1)
            else:
                ways = _comb(n_r, k)
            psi_r += _comb(n_l - 1, k - 1) * ways * (-1) ** (n_l - k)

    scale = 2.0 ** (-n_steps / 2)
    return psi_l * scale, psi_r * scale


# -- checkerboard -------------------------------------------------------------

def checkerboard_counts(n_steps: int, z: int, start: str = "right") -> dict[int, int]:
    """``N(R)``: number of ``n``-step light-like paths from 0 to ``z`` with ``R`` reversals.

    A path with ``R`` reversals is ``R + 1`` alternating runs; the run lengths are
    compositions of the right and left move counts.  ``start`` fixes the first
    move (``"right"``/``"left"``) or allows both (``"superposed"``).
    """
    if start not in ("right", "left", "superposed"):
        raise ValueError("start must be 'right', 'left' or 'superposed'")
    if n_steps < 1 or n_steps > 1000:
        raise ValueError(f"n_steps must lie in [1, 1000], got {n_steps}")
    if abs(z) > n_steps or (n_steps - z) % 2:
        return {}
    n_r, n_l = (n_steps + z) // 2, (n_steps - z) // 2
    counts: dict[int, int] = {}
    firsts = ("right", "left") if start == "superposed" else (start,)
    for first in firsts:
        lead, other = (n_r, n_l) if first == "right" else (n_l, n_r)
        for R in range(n_steps):
            runs_lead, runs_other = (R + 2) // 2, (R + 1) // 2
            c = _comb(lead - 1, runs_lead - 1) * _comb(other - 1, runs_other - 1)
            if c:
                counts[R] = counts.get(R, 0) + c
    return counts


def checkerboard_kernel(n_steps: int, z: int, mass_a: float, start: str = "right") -> complex:
    """``K(z) = sum_R N(R) (i a m)^R`` with ``mass_a = a m``."""
    return complex(sum(c * (1j * mass_a) ** R for R, c in checkerboard_counts(n_steps, z, start).items()))
