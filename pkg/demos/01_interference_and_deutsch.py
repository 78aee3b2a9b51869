"""Interference as path cancellation, and Deutsch's algorithm as a path count.

Each Hadamard splits a path in two and adds pi * q * q' to its action, so
every circuit amplitude is a signed count of paths times 2^(-k/2).
"""

from qpathsum.algorithms import deutsch_run
from qpathsum.gates import Circuit, Hadamard, to_bits
from qpathsum.pathsum import enumerate_paths, propagator_element

hh = Circuit(1, [Hadamard(0), Hadamard(0)])
print("Two Hadamards on one qubit, paths from |0> to |1>:")
for p in enumerate_paths(hh, 0, 1):
    print(f"  {' -> '.join(map(str, p.states))}   action = {p.action:.4f}   amplitude = {p.amplitude.real:+.3f}")
print(f"  total amplitude = {propagator_element(hh, 0, 1).real}  (the two paths cancel exactly)\n")

for f in [(0, 0), (1, 1), (0, 1), (1, 0)]:
    result = deutsch_run(f)
    print(f"f = {f}: {result.verdict:8s} (measured {result.outcome} with probability {result.probability:.12f})")
    for p in result.paths:
        states = " -> ".join(to_bits(z, 2) for z in p.states)
        print(f"    {'+' if p.sign > 0 else '-'} {states}")
