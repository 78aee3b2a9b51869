"""Transfer matrices, Suzuki-Trotter partition functions and Euclidean actions.

Spin ``sigma = +1`` is basis index 0 and ``sigma = -1`` index 1, matching
``Z|q> = (-1)^q |q>``.  Matrices are indexed ``[sigma', sigma]`` (row = later
slice).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .core import X, Y, Z, expm_hermitian, single_qubit_op

MAX_SIGN_PATH_EXPONENT = 24
SPIN = np.array([1, -1])


class SignBudgetExceeded(RuntimeError):
    def __init__(self, exponent: int):
        self.exponent = exponent
        super().__init__(
            f"2^{exponent} closed paths exceeds the 2^{MAX_SIGN_PATH_EXPONENT} enumeration budget"
        )


@dataclass(frozen=True)
class TransferMatrix:
    """``<s'|T|s> = exp(beta (h s s' + J s))`` for a classical Ising ring in a field."""

    matrix: np.ndarray
    h: float
    J: float
    beta: float

    def factors(self) -> tuple[np.ndarray, np.ndarray]:
        """``T = T1 @ T2`` with ``T1 = exp(beta h s s')`` and ``T2 = exp(beta J Z)``."""
        b = self.beta
        T1 = np.exp(b * self.h * np.outer(SPIN, SPIN))
        T2 = np.diag(np.exp(b * self.J * SPIN))
        return T1, T2


def transfer_matrix(h: float, J: float, beta: float) -> TransferMatrix:
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    s_new, s_old = np.meshgrid(SPIN, SPIN, indexing="ij")
    m = np.exp(beta * (h * s_new * s_old + J * s_old))
    return TransferMatrix(m, h, J, beta)


def partition_transfer(n: int, h: float, J: float, beta: float) -> float:
    """``Z = Tr T^n`` for the ``n``-spin periodic chain."""
    if n < 2:
        raise ValueError(f"ring needs n >= 2 spins, got {n}")
    T = transfer_matrix(h, J, beta).matrix
    return float(np.trace(np.linalg.matrix_power(T, n)))


def suzuki_coefficients(h: float, dtau: float) -> tuple[float, float]:
    """``(h', C)`` with ``<q'|exp(dtau h X)|q> = C exp(h' s s')``.

    ``h' = 1/2 log coth(dtau h)`` and ``C = sqrt(sinh(2 dtau h) / 2)``, so that
    ``C e^{h'} = cosh(dtau h)`` and ``C e^{-h'} = sinh(dtau h)``.
    """
    if h <= 0 or dtau <= 0:
        raise ValueError(f"h and dtau must be positive, got h={h}, dtau={dtau}")
    x = dtau * h
    h_prime = -0.5 * math.log(math.tanh(x))
    C = math.sqrt(0.5 * math.sinh(2 * x))
    return h_prime, C


def exact_partition_single_spin(h: float, J: float, beta: float) -> float:
    """``Tr exp(-beta H)`` for ``H = -h X - J Z``: ``2 cosh(beta sqrt(h^2 + J^2))``."""
    return 2 * math.cosh(beta * math.hypot(h, J))


def slice_factors(model: str, h: float, J: float, dtau: float) -> list[np.ndarray]:
    """Factors of one imaginary-time slice, rightmost applied first.

    ``"XZ"``: ``exp(dtau h X) exp(dtau J Z)`` for ``H = -h X - J Z``.
    ``"XY"``: ``exp(dtau h Y) exp(dtau J X)`` for ``H = -J X - h Y``.
    """
    if model == "XZ":
        return [expm_hermitian(X, 1j * dtau * h), expm_hermitian(Z, 1j * dtau * J)]
    if model == "XY":
        return [expm_hermitian(Y, 1j * dtau * h), expm_hermitian(X, 1j * dtau * J)]
    raise ValueError(f"model must be 'XZ' or 'XY', got {model!r}")


def slice_matrix(model: str, h: float, J: float, dtau: float) -> np.ndarray:
    a, b = slice_factors(model, h, J, dtau)
    return a @ b


def trotter_partition_single_spin(h: float, J: float, beta: float, M: int, method: str = "matrix") -> float:
    """Trotterised ``Tr (e^{dtau h X} e^{dtau J Z})^M`` with ``dtau = beta/M``.

    ``method="paths"`` sums the ``2^M`` closed spin paths with Suzuki weights
    ``C e^{h' s s'} e^{dtau J s}``; ``"matrix"`` takes the trace of the 2x2
    slice product.  Both tend to ``2 cosh(beta sqrt(h^2+J^2))``.
    """
    if M < 2:
        raise ValueError(f"M must be at least 2, got {M}")
    dtau = beta / M
    if method == "matrix":
        S = slice_matrix("XZ", h, J, dtau)
        return float(np.real(np.trace(np.linalg.matrix_power(S, M))))
    if method == "paths":
        if M > MAX_SIGN_PATH_EXPONENT:
            raise ValueError(f"path enumeration limited to M <= {MAX_SIGN_PATH_EXPONENT}")
        h_prime, C = suzuki_coefficients(h, dtau)
        sigma = 1 - 2 * ((np.arange(2**M)[:, None] >> np.arange(M)) & 1)
        nxt = np.roll(sigma, -1, axis=1)
        log_w = M * math.log(C) + h_prime * (sigma * nxt).sum(axis=1) + dtau * J * sigma.sum(axis=1)
        return float(np.exp(log_w).sum())
    raise ValueError(f"method must be 'matrix' or 'paths', got {method!r}")


@dataclass(frozen=True)
class SignHistogram:
    """Closed-path weights grouped by phase: ``{phase: (count, total |weight|)}``."""

    model: str
    bins: dict

    @property
    def total(self) -> complex:
        return sum(phase * weight for phase, (_, weight) in self.bins.items())

    @property
    def all_positive(self) -> bool:
        return set(self.bins) <= {1}

    def fraction(self, phase) -> float:
        """Share of total ``|weight|`` carried by paths with the given phase."""
        total = sum(w for _, w in self.bins.values())
        return self.bins.get(phase, (0, 0.0))[1] / total


PHASES = (1, 1j, -1, -1j)


def sign_statistics(model: str, h: float, J: float, beta: float, M: int) -> SignHistogram:
    """Enumerate every closed Z-basis path and bin its weight by phase.

    A resolution of the identity is inserted before each non-diagonal factor
    of each slice, so ``XZ`` has ``2^M`` paths and ``XY`` has ``4^M``.
    Zero-weight paths are skipped.
    """
    if M < 1:
        raise ValueError("M must be positive")
    factors = slice_factors(model, h, J, beta / M)[::-1] * M  # time order
    branching = [not np.allclose(f, np.diag(np.diag(f))) for f in factors]
    free = int(sum(branching))
    if free > MAX_SIGN_PATH_EXPONENT:
        raise SignBudgetExceeded(free)

    bins: dict = {}
    chunk = 2**18
    total_paths = 2**free
    for start in range(0, total_paths, chunk):
        idx = np.arange(start, min(start + chunk, total_paths))
        # state after each branching factor; diagonal factors keep the state
        after = (idx[:, None] >> np.arange(free)) & 1
        w = np.ones(idx.size, dtype=complex)
        cur = after[:, -1] if free else np.zeros(idx.size, dtype=int)
        col = 0
        for f, br in zip(factors, branching):
            if br:
                new = after[:, col]
                col += 1
            else:
                new = cur
            w *= f[new, cur]
            cur = new
        w = w[np.abs(w) > 0]
        phase = np.angle(w) / (np.pi / 2)
        quarter = np.rint(phase).astype(int) % 4
        if np.any(np.abs(phase - np.rint(phase)) > 1e-9):
            raise ValueError("path weight with a phase outside {+1, +i, -1, -i}")
        for q in range(4):
            sel = quarter == q
            if sel.any():
                count, weight = bins.get(PHASES[q], (0, 0.0))
                bins[PHASES[q]] = (count + int(sel.sum()), weight + float(np.abs(w[sel]).sum()))
    return SignHistogram(model, dict(sorted(bins.items(), key=lambda kv: PHASES.index(kv[0]))))


def trotter_trace(model: str, h: float, J: float, beta: float, M: int) -> complex:
    S = slice_matrix(model, h, J, beta / M)
    return complex(np.trace(np.linalg.matrix_power(S, M)))


# -- transverse-field Ising chain -> (1+1)D classical grid -------------------

@dataclass(frozen=True)
class EuclideanAction:
    """Squared-difference action of a spin grid.

    The Boltzmann weight is ``exp(log_prefactor + offset - value)``; the two
    constants come from ``C^{nM}`` and from rewriting ``s s'`` as ``1 - (s-s')^2/2``.
    """

    temporal: float
    spatial: float
    offset: float
    log_prefactor: float

    @property
    def value(self) -> float:
        return self.temporal + self.spatial

    @property
    def weight(self) -> float:
        return math.exp(self.log_prefactor + self.offset - self.value)


def _check_config(config) -> np.ndarray:
    s = np.asarray(config)
    if s.ndim != 2:
        raise ValueError("configuration must be a 2-d array (Trotter slices x sites)")
    if not np.all(np.isin(s, (-1, 1))):
        raise ValueError("spins must be +1 or -1")
    return s.astype(int)


def tfim_euclidean_action(config, h: float, J: float, dtau: float) -> EuclideanAction:
    """Action of an ``M x n`` grid, periodic in both directions.

    ``S = sum (h'/2)(s_j^{l+1} - s_j^l)^2 + (dtau J/2)(s_j^l - s_{j+1}^l)^2``
    with ``h'`` from :func:`suzuki_coefficients`.
    """
    s = _check_config(config)
    M, n = s.shape
    h_prime, C = suzuki_coefficients(h, dtau)
    dt_sq = (np.roll(s, -1, axis=0) - s) ** 2
    dx_sq = (np.roll(s, -1, axis=1) - s) ** 2
    return EuclideanAction(
        temporal=h_prime / 2 * float(dt_sq.sum()),
        spatial=dtau * J / 2 * float(dx_sq.sum()),
        offset=n * M * (h_prime + dtau * J),
        log_prefactor=n * M * math.log(C),
    )


def hamming_between_slices(config) -> int:
    """Total Hamming distance between consecutive (periodic) Trotter slices."""
    s = _check_config(config)
    return int((np.roll(s, -1, axis=0) != s).sum())


def tfim_slice_trace(n: int, h: float, J: float, dtau: float, M: int) -> float:
    """``Tr (e^{dtau h sum X_j} e^{dtau J sum Z_j Z_{j+1}})^M`` by dense matrices."""
    Kx = sum(single_qubit_op(X, j, n) for j in range(n))
    Vzz = sum(single_qubit_op(Z, j, n) @ single_qubit_op(Z, (j + 1) % n, n) for j in range(n))
    S = expm_hermitian(Kx, 1j * dtau * h) @ expm_hermitian(Vzz, 1j * dtau * J)
    return float(np.real(np.trace(np.linalg.matrix_power(S, M))))


# -- free particle ---------------------------------------------------------------

class GridTooCoarseError(ValueError):
    def __init__(self, aliasing: float):
        self.aliasing = aliasing
        super().__init__(
            f"grid under-resolves the slice kernel: phase step {aliasing:.3g} pi per grid "
            "spacing at the domain edge (needs <= 1); reduce the spacing or the extent"
        )


def free_propagator_exact(m: float, t: float, xI: float, xF: float) -> complex:
    """``sqrt(m / (2 pi i t)) exp(i m (xF - xI)^2 / (2t))`` with hbar = 1 (principal root)."""
    if not t > 0:
        raise ValueError("t must be positive")
    return complex(np.sqrt(m / (2j * np.pi * t)) * np.exp(1j * m * (xF - xI) ** 2 / (2 * t)))


def _slice_kernel(m: float, dt: float, dx) -> np.ndarray:
    return np.sqrt(-1j * m / (2 * np.pi * dt)) * np.exp(1j * m * np.asarray(dx) ** 2 / (2 * dt))


def _window(x: np.ndarray, half: float, taper: float) -> np.ndarray:
    inner = (1 - taper) * half
    r = np.clip((np.abs(x) - inner) / (half - inner), 0.0, 1.0)
    return np.cos(np.pi / 2 * r) ** 2


def max_spacing(m: float, t: float, M: int, extent: float) -> float:
    """Largest grid spacing at which the slice kernel's chirp is not aliased."""
    return np.pi * (t / M) / (m * extent)


def free_propagator_discretized(m: float, t: float, xI: float, xF: float, M: int,
                                extent: float, spacing: float | None = None,
                                boundary: str = "taper", taper: float = 0.5) -> complex:
    """Time-sliced free propagator: ``M - 1`` grid sums over intermediate positions.

    Each slice contributes ``sqrt(-i m / 2 pi dt) exp(i m dx^2 / 2 dt)``.  The
    intermediate positions are ``xI + spacing * k`` within ``extent/2`` of the
    midpoint of the endpoints; ``xF - xI`` must be a multiple of ``spacing``.
    By default ``spacing`` is the largest such value no more than half of
    :func:`max_spacing`.

    ``boundary="taper"`` rolls the integration measure off smoothly over the
    outer ``taper`` fraction of the half-extent; ``"hard"`` truncates.
    Raises :class:`GridTooCoarseError` when the kernel's chirp is aliased at
    the domain edge.
    """
    if not t > 0 or not m > 0 or not extent > 0:
        raise ValueError("m, t and extent must be positive")
    if M < 1:
        raise ValueError("M must be positive")
    if M == 1:
        return complex(_slice_kernel(m, t, xF - xI))
    if boundary not in ("taper", "hard"):
        raise ValueError("boundary must be 'taper' or 'hard'")
    if abs(xF - xI) >= extent / 2:
        raise ValueError("endpoints must lie well inside the domain (|xF - xI| < extent/2)")
    dt = t / M
    dist = abs(xF - xI)
    if spacing is None:
        target = 0.5 * max_spacing(m, t, M, extent)
        spacing = dist / math.ceil(dist / target) if dist > 0 else target
    steps = (xF - xI) / spacing
    if abs(steps - round(steps)) > 1e-9:
        raise ValueError(f"xF - xI = {xF - xI} is not a multiple of the spacing {spacing}")
    aliasing = m * extent * spacing / (np.pi * dt)
    if aliasing > 1:
        raise GridTooCoarseError(aliasing)

    centre = 0.5 * (xI + xF)
    k_lo = math.ceil((centre - extent / 2 - xI) / spacing - 1e-9)
    k_hi = math.floor((centre + extent / 2 - xI) / spacing + 1e-9)
    x = xI + spacing * np.arange(k_lo, k_hi + 1)
    npts = x.size
    w = _window(x - centre, extent / 2, taper) if boundary == "taper" else np.ones(npts)
    kernel = _slice_kernel(m, dt, spacing * np.arange(-(npts - 1), npts))
    v = _slice_kernel(m, dt, x - xI) * w
    for _ in range(M - 2):
        v = spacing * fftconvolve(v, kernel)[npts - 1: 2 * npts - 1] * w
    return complex(spacing * np.dot(_slice_kernel(m, dt, xF - x), v))


def discrete_action(path, m: float, dt: float) -> float:
    """``sum (m/2) (x_{l+1} - x_l)^2 / dt`` for a free particle."""
    xs = np.asarray(path, dtype=float)
    return float((m / 2 * np.diff(xs) ** 2 / dt).sum())


def least_action_path(xI: float, xF: float, t: float, m: float, grid, slices: int = 3):
    """Exhaustive scan over ``slices - 1`` intermediate grid positions.

    Returns ``(path, action)`` of the minimiser.
    """
    grid = np.asarray(grid, dtype=float)
    inner = slices - 1
    mesh = np.stack(np.meshgrid(*([grid] * inner), indexing="ij"), axis=-1).reshape(-1, inner)
    full = np.column_stack([np.full(len(mesh), xI), mesh, np.full(len(mesh), xF)])
    actions = (m / 2 * np.diff(full, axis=1) ** 2 / (t / slices)).sum(axis=1)
    best = int(np.argmin(actions))
    return tuple(full[best]), float(actions[best])
