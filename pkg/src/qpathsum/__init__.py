"""Sum-over-paths numerics for quantum circuits, walks, annealing and lattice spin models."""

from .algorithms import GroverInstance, deutsch_run, grover_iterate, grover_success_curve
from .anneal import grover_gap, local_adiabatic_schedule, qaoa_evolve, ring_hamiltonians, trotterize
from .core import DenseOperator, QuantumState, dense_propagator
from .gates import CNOT, NOT, BitFlipOracle, Circuit, Hadamard, PhaseOracle, Toffoli
from .pathsum import PathBudgetExceeded, enumerate_paths, propagator_element, propagator_matrix
from .statmech import partition_transfer, sign_statistics, tfim_euclidean_action
from .walks import ctqrw_bessel, ctqrw_exact, dtqrw_combinatorial, dtqrw_run

__version__ = "0.1.0"

__all__ = [
    "BitFlipOracle", "CNOT", "Circuit", "DenseOperator", "GroverInstance", "Hadamard", "NOT",
    "PathBudgetExceeded", "PhaseOracle", "QuantumState", "Toffoli", "ctqrw_bessel", "ctqrw_exact",
    "dense_propagator", "deutsch_run", "dtqrw_combinatorial", "dtqrw_run", "enumerate_paths",
    "grover_gap", "grover_iterate", "grover_success_curve", "local_adiabatic_schedule",
    "partition_transfer", "propagator_element", "propagator_matrix", "qaoa_evolve",
    "ring_hamiltonians", "sign_statistics", "tfim_euclidean_action", "trotterize",
]
