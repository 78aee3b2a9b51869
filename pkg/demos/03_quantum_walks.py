"""Classical versus quantum walks on the line.

The classical walk spreads diffusively (width ~ sqrt(t)); both quantum walks
spread ballistically, the continuous-time one as a Bessel wave front moving at
speed 2.
"""

import numpy as np

from qpathsum.walks import (
    bessel_front, checkerboard_counts, classical_rw_distribution, ctqrw_bessel, ctqrw_exact,
    dtqrw_combinatorial, dtqrw_run,
)

steps = 50
classical = classical_rw_distribution(steps)
quantum = dtqrw_run(steps, (1, 1j))
sd_classical = np.sqrt(sum(p * z**2 for z, p in classical.items()))
sd_quantum = np.sqrt(np.sum(quantum.probabilities * quantum.positions**2))
print(f"After {steps} steps: classical spread {sd_classical:.2f}, quantum spread {sd_quantum:.2f}")

print("\nHadamard walk amplitudes from signed path counts vs. coin/shift simulation (n = 5):")
state = dtqrw_run(5, (1, 0))
for z in range(-5, 6, 2):
    print(f"  z = {z:+d}: paths {np.round(dtqrw_combinatorial(5, z, 'up'), 6)}  "
          f"simulation {np.round(np.real(state.amplitude(z)), 6)}")

t = 10.0
print(f"\nContinuous-time walk on a 1000-site ring, t = {t}:")
for d in (0, 10, 18, 20, 25):
    print(f"  d = {d:2d}: |ring kernel| = {abs(ctqrw_exact(1000, t, d)):.6f}, "
          f"|(-i)^d J_d(2t)| = {abs(ctqrw_bessel(t, d)):.6f}")
print(f"  wave front at d = {bessel_front(t)} (speed 2 gives {2 * t:.0f})")

print("\nCheckerboard: number of 10-step paths to z = 2 by reversal count R")
print("  ", checkerboard_counts(10, 2, "superposed"))
