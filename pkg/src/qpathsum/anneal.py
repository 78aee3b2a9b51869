"""Adiabatic interpolation, Grover spectral gap, schedules and QAOA angles.

The interpolated Hamiltonian is ``H(lam) = (1 - lam) K + lam V``.  ``K`` is the
mixer with ground state ``|s>``; ``V`` is diagonal in the computational basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .core import HERMITIAN_TOL, QuantumState, DenseOperator, X, Z, single_qubit_op

SCHEDULE_SAMPLES = 2**10 + 1


class ScheduleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Schedule:
    """Interpolation ``lam(t)`` on ``[0, T]`` with ``lam(0)=0`` and ``lam(T)=1``.

    ``func`` gives a closed form; otherwise ``samples`` holds ``lam`` on a uniform
    grid of ``[0, T]`` and is linearly interpolated.
    """

    kind: str
    total_time: float
    func: Callable[[np.ndarray], np.ndarray] | None = None
    samples: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.total_time > 0:
            raise ValueError(f"total time must be positive, got {self.total_time}")
        if (self.func is None) == (self.samples is None):
            raise ValueError("give exactly one of func or samples")
        if self.samples is not None:
            s = np.array(self.samples, dtype=float)
            if s.ndim != 1 or s.size < 2:
                raise ValueError("samples must be a 1-d array with at least 2 entries")
            if np.any(np.diff(s) < 0):
                raise ValueError("tabulated schedule must be nondecreasing")
            s.setflags(write=False)
            object.__setattr__(self, "samples", s)

    @cached_property
    def grid(self) -> np.ndarray:
        n = SCHEDULE_SAMPLES if self.samples is None else self.samples.size
        return np.linspace(0.0, self.total_time, n)

    def __call__(self, t):
        t = np.clip(t, 0.0, self.total_time)
        if self.func is not None:
            return self.func(t)
        return np.interp(t, self.grid, self.samples)

    def table(self) -> tuple[np.ndarray, np.ndarray]:
        return self.grid, np.asarray(self(self.grid), dtype=float)


def linear_schedule(total_time: float) -> Schedule:
    return Schedule("linear", total_time, func=lambda t: np.asarray(t) / total_time)


def tabulated_schedule(total_time: float, values) -> Schedule:
    """Schedule from samples on a uniform grid of ``[0, total_time]``."""
    values = np.asarray(values, dtype=float)
    return Schedule("tabulated", total_time, samples=values)


@dataclass(frozen=True)
class HamiltonianPair:
    K: DenseOperator
    V: DenseOperator

    def __post_init__(self):
        if self.K.n != self.V.n:
            raise ValueError(f"K acts on {self.K.n} qubits, V on {self.V.n}")
        for name, op in (("K", self.K), ("V", self.V)):
            if op.hermiticity_error > HERMITIAN_TOL:
                raise ValueError(f"{name} is not hermitian")

    @property
    def n(self) -> int:
        return self.K.n

    @property
    def dim(self) -> int:
        return 2**self.n

    @cached_property
    def eigen_K(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.K.matrix)

    @cached_property
    def eigen_V(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.V.matrix)


def grover_pair(n: int, w: int) -> HamiltonianPair:
    """``K_G = 1 - |s><s|`` and ``V_G = 1 - |w><w|``."""
    N = 2**n
    if not 0 <= w < N:
        raise ValueError(f"marked item {w} outside [0, {N})")
    s = np.full(N, 1 / np.sqrt(N))
    K = np.eye(N) - np.outer(s, s)
    V = np.eye(N)
    V[w, w] = 0.0
    return HamiltonianPair(
        DenseOperator(n, K, hermitian=True),
        DenseOperator(n, V, hermitian=True),
    )


def ring_hamiltonians(n: int, mixer_sign: int = -1) -> HamiltonianPair:
    """Transverse-field mixer and periodic Ising ring.

    ``K = mixer_sign * sum_j X_j`` and ``V = sum_j Z_j Z_{j+1 mod n}``.  The
    default ``mixer_sign=-1`` makes ``|s>`` the ground state of ``K``.
    """
    if not 2 <= n <= 10:
        raise ValueError(f"ring size must lie in [2, 10], got {n}")
    if mixer_sign not in (1, -1):
        raise ValueError("mixer_sign must be +1 or -1")
    K = mixer_sign * sum(single_qubit_op(X, j, n) for j in range(n))
    V = sum(single_qubit_op(Z, j, n) @ single_qubit_op(Z, (j + 1) % n, n) for j in range(n))
    return HamiltonianPair(DenseOperator(n, K, hermitian=True), DenseOperator(n, V, hermitian=True))


def interpolated_hamiltonian(pair: HamiltonianPair, lam: float) -> DenseOperator:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if lam == 0.0:
        return pair.K
    if lam == 1.0:
        return pair.V
    m = (1 - lam) * pair.K.matrix + lam * pair.V.matrix
    return DenseOperator(pair.n, m, hermitian=True)


def grover_gap(lam, N: int):
    """Gap between the two lowest levels of the interpolated Grover Hamiltonian.

    ``g(lam) = sqrt(1 - 4 (N-1)/N lam (1-lam))``; its minimum ``1/sqrt(N)`` is at
    ``lam = 1/2``.
    """
    lam = np.asarray(lam, dtype=float)
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if np.any((lam < 0) | (lam > 1)):
        raise ValueError("lambda must lie in [0, 1]")
    g = np.sqrt(1 - 4 * (N - 1) / N * lam * (1 - lam))
    return float(g) if g.ndim == 0 else g


def local_adiabatic_time(N: int, eps: float) -> float:
    """Exact duration of the ``dlam/dt = eps g^2`` schedule.

    Integrating ``1/(eps g^2)`` over ``[0, 1]`` gives
    ``N / sqrt(N-1) * arctan(sqrt(N-1)) / eps``, which tends to
    :func:`optimal_time_asymptotic` as ``N`` grows.
    """
    _check_local(N, eps)
    return N / np.sqrt(N - 1) * np.arctan(np.sqrt(N - 1)) / eps


def optimal_time_asymptotic(N: int, eps: float) -> float:
    """Large-``N`` running time ``pi sqrt(N) / (2 eps)`` of the local schedule."""
    _check_local(N, eps)
    return np.pi * np.sqrt(N) / (2 * eps)


def _check_local(N: int, eps: float) -> None:
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def local_adiabatic_schedule(N: int, eps: float) -> Schedule:
    """Integrate ``dlam/dt = eps g(lam)^2`` from ``lam(0) = 0`` until ``lam = 1``.

    The schedule moves slowly where the gap is small.  Its duration is the
    time at which the ODE solution reaches 1; ``ScheduleError`` is raised (with
    the last value of lambda) if the integrator fails first.
    """
    _check_local(N, eps)

    def rhs(t, y):
        return [eps * grover_gap(min(max(y[0], 0.0), 1.0), N) ** 2]

    def reach_one(t, y):
        return y[0] - 1.0

    reach_one.terminal = True
    reach_one.direction = 1
    # lam grows at least at rate eps/N, so it reaches 1 before N/eps
    horizon = 1.5 * N / eps
    sol = solve_ivp(rhs, (0.0, horizon), [0.0], method="DOP853", rtol=1e-12, atol=1e-14,
                    events=reach_one, dense_output=True)
    if sol.status != 1 or not sol.t_events[0].size:
        raise ScheduleError(f"ODE integration stopped at lambda={sol.y[0, -1]:.6g}: {sol.message}")
    T = float(sol.t_events[0][0])
    grid = np.linspace(0.0, T, SCHEDULE_SAMPLES)
    lam = np.clip(sol.sol(grid)[0], 0.0, 1.0)
    lam[0], lam[-1] = 0.0, 1.0
    lam = np.maximum.accumulate(lam)
    return Schedule("local_adiabatic", T, samples=lam)


def linear_schedule_time_bound(N: int, eps: float) -> float:
    """Running time the global adiabatic condition demands of ``lam = t/T``.

    ``T >= max ||dH/dlam|| / (eps g^2) = N / eps`` with ``||dH/dlam|| <= 1`` and
    ``min g^2 = 1/N``.
    """
    _check_local(N, eps)
    return N / eps


def trotterize(schedule: Schedule, M: int) -> tuple[np.ndarray, np.ndarray]:
    """QAOA angles from time slicing: ``beta_l = D(1 - lam(lD))``, ``gamma_l = D lam(lD)``.

    ``D = T/M`` and ``l = 1..M``, so the angles sum to ``T``.
    """
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    delta = schedule.total_time / M
    lam = np.asarray(schedule(delta * np.arange(1, M + 1)), dtype=float)
    return delta * (1 - lam), delta * lam


def _exp_apply(eigen: tuple[np.ndarray, np.ndarray], angle: float, psi: np.ndarray) -> np.ndarray:
    evals, evecs = eigen
    return evecs @ (np.exp(-1j * angle * evals) * (evecs.conj().T @ psi))


def qaoa_evolve(betas, gammas, pair: HamiltonianPair, initial: QuantumState) -> QuantumState:
    """Apply ``U_K(beta_l) U_V(gamma_l)`` for ``l = 1..M``, layer 1 first."""
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    if betas.shape != gammas.shape:
        raise ValueError("beta and gamma lists must have equal length")
    if initial.n != pair.n:
        raise ValueError(f"state on {initial.n} qubits, Hamiltonians on {pair.n}")
    psi = np.array(initial.amplitudes)
    for beta, gamma in zip(betas, gammas):
        psi = _exp_apply(pair.eigen_V, gamma, psi)
        psi = _exp_apply(pair.eigen_K, beta, psi)
    return QuantumState(pair.n, psi)


def qaoa_objective(betas, gammas, pair: HamiltonianPair, initial: QuantumState) -> float:
    psi = qaoa_evolve(betas, gammas, pair, initial).amplitudes
    return float(np.real(np.vdot(psi, pair.V.matrix @ psi)))


def schedule_evolve(schedule: Schedule, pair: HamiltonianPair, initial: QuantumState,
                    steps: int = 1000) -> QuantumState:
    """Integrate ``i d|psi>/dt = H(lam(t)) |psi>`` with fixed-step RK4.

    Raises ``ScheduleError`` when the norm drifts by more than 1e-8, which
    means ``steps`` is too small for the Hamiltonian's scale.
    """
    if initial.n != pair.n:
        raise ValueError(f"state on {initial.n} qubits, Hamiltonians on {pair.n}")
    if steps < 1:
        raise ValueError("steps must be positive")
    K, V = pair.K.matrix, pair.V.matrix

    def deriv(t, psi):
        lam = float(schedule(t))
        return -1j * ((1 - lam) * (K @ psi) + lam * (V @ psi))

    h = schedule.total_time / steps
    psi = np.array(initial.amplitudes)
    t = 0.0
    for i in range(steps):
        t = i * h
        k1 = deriv(t, psi)
        k2 = deriv(t + h / 2, psi + h / 2 * k1)
        k3 = deriv(t + h / 2, psi + h / 2 * k2)
        k4 = deriv(t + h, psi + h * k3)
        psi = psi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    drift = abs(np.linalg.norm(psi) - initial.norm)
    if drift > 1e-8:
        raise ScheduleError(f"norm drift {drift:.3g} with {steps} steps; increase steps")
    return QuantumState(pair.n, psi)


def schedule_evolve_converged(schedule: Schedule, pair: HamiltonianPair, initial: QuantumState,
                              steps: int = 256, tol: float = 1e-6,
                              max_steps: int = 2**18) -> tuple[QuantumState, int]:
    """:func:`schedule_evolve` with the step count doubled until the final
    state changes by less than ``tol`` (2-norm) between successive doublings.

    Returns the converged state and the step count used.
    """
    previous = None
    while steps <= max_steps:
        try:
            state = schedule_evolve(schedule, pair, initial, steps)
        except ScheduleError:
            state = None
        if state is not None and previous is not None:
            if np.linalg.norm(state.amplitudes - previous.amplitudes) < tol:
                return state, steps
        previous = state
        steps *= 2
    raise ScheduleError(f"RK4 did not converge to {tol} within {max_steps} steps")
