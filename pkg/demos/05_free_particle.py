"""The free-particle propagator by time slicing.

Each slice contributes sqrt(-i m / 2 pi dt) exp(i m dx^2 / 2 dt); summing the
intermediate positions on a fine grid reproduces the closed form, and the
straight line is the path of least discrete action.
"""

import numpy as np

from qpathsum.statmech import (
    GridTooCoarseError, free_propagator_discretized, free_propagator_exact, least_action_path,
)

m, t, xI, xF = 1.0, 1.0, 0.0, 1.0
exact = free_propagator_exact(m, t, xI, xF)
print(f"closed form: {exact:.8f}  (|K| = {abs(exact):.8f}, phase of prefactor -pi/4)")
for M in (1, 2, 4, 8, 16):
    k = free_propagator_discretized(m, t, xI, xF, M, extent=20.0)
    print(f"  M = {M:2d}: {k:.8f}   |diff| = {abs(k - exact):.2e}")

try:
    free_propagator_discretized(m, t, 0.0, 0.0, 32, extent=40.0, spacing=0.05)
except GridTooCoarseError as err:
    print("\nA coarse grid is refused:", err)

path, action = least_action_path(0.0, 0.9, t, m, np.round(np.linspace(-1.5, 2.4, 40), 12), slices=3)
print(f"\nLeast-action 3-slice path from 0 to 0.9: {np.round(path, 6)}, S = {action:.4f} "
      f"(classical m d^2 / 2t = {m * 0.9**2 / (2 * t):.4f})")
