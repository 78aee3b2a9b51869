"""Partition functions as sums over closed spin paths.

A classical Ising ring is a trace of a 2x2 transfer matrix.  A quantum spin
becomes a classical chain in imaginary time after Trotter slicing: positive
weights in the XZ model, complex phases (the sign problem) in the XY model.
"""

import math

from qpathsum.statmech import (
    exact_partition_single_spin, partition_transfer, sign_statistics, suzuki_coefficients,
    trotter_partition_single_spin,
)

print("Ising ring, h=1, J=0.5, beta=1:", [round(partition_transfer(n, 1.0, 0.5, 1.0), 4) for n in (2, 4, 8)])

h, J, beta = 1.0, 1.0, 1.0
exact = exact_partition_single_spin(h, J, beta)
print(f"\nSingle spin H = -hX - JZ: exact Z = 2 cosh(beta sqrt(h^2+J^2)) = {exact:.10f}")
for M in (4, 8, 16, 32, 64):
    z = trotter_partition_single_spin(h, J, beta, M)
    print(f"  M = {M:3d}: Z_M = {z:.10f}   error {abs(z - exact):.3e}")
print("  (the error falls 4x per doubling: for a trace the first-order term cancels)")

h_prime, C = suzuki_coefficients(h, beta / 8)
print(f"\nTemporal coupling at dtau = 1/8: h' = {h_prime:.5f}, C = {C:.5f}")

LABELS = {1: "+1", 1j: "+i", -1: "-1", -1j: "-i"}
for model in ("XZ", "XY"):
    hist = sign_statistics(model, h, J, beta, 4)
    print(f"\n{model} model, M = 4: phase -> (paths, total |weight|)")
    for phase, (count, weight) in hist.bins.items():
        print(f"  {LABELS[phase]}: {count:4d}  {weight:.6f}")
    print(f"  phase-weighted sum = {hist.total.real:.10f}")
