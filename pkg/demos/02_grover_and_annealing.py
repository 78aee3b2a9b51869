"""Grover search three ways: amplitude iteration, gate-level path sum, and
adiabatic evolution under a gap-adapted schedule.
"""

import math

import numpy as np

from qpathsum.algorithms import GroverInstance, grover_circuit, grover_success_curve
from qpathsum.anneal import (
    grover_gap, grover_pair, linear_schedule_time_bound, local_adiabatic_schedule, local_adiabatic_time,
    optimal_time_asymptotic, schedule_evolve_converged,
)
from qpathsum.core import QuantumState
from qpathsum.pathsum import propagator_column

inst = GroverInstance(2, 1)
print("N = 4: one iteration finds the marked item with certainty")
print("  success probability per iteration:", [round(p, 6) for _, p in grover_success_curve(inst, 3)])
column = propagator_column(grover_circuit(inst, 1), 0)
print("  gate-level path sum after one iteration:", np.round(column.real, 12), "\n")

inst = GroverInstance(10, 357)
curve = grover_success_curve(inst, 50)
k_best = max(curve, key=lambda kp: kp[1])[0]
print(f"N = 1024: best iteration {k_best}, pi/4 sqrt(N) = {math.pi / 4 * 32:.2f}\n")

N, eps = 128, 0.1
print(f"Interpolated Hamiltonian, N = {N}: minimum gap {grover_gap(0.5, N):.5f} = 1/sqrt(N)")
print(f"  linear schedule needs T ~ N/eps             = {linear_schedule_time_bound(N, eps):.1f}")
print(f"  local schedule (dlam/dt = eps g^2) takes T = {local_adiabatic_time(N, eps):.3f}")
print(f"  its large-N form pi sqrt(N) / (2 eps)       = {optimal_time_asymptotic(N, eps):.3f}")
schedule = local_adiabatic_schedule(N, eps)
state, steps = schedule_evolve_converged(schedule, grover_pair(7, 5), QuantumState.uniform(7))
print(f"  final |<w|psi(T)>|^2 = {abs(state.amplitudes[5]) ** 2:.6f}  (RK4, {steps} steps)")
