import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpathsum.core import dense_propagator
from qpathsum.gates import CNOT, NOT, Circuit, Hadamard, PhaseOracle, Toffoli, random_circuit
from qpathsum.pathsum import (
    PathBudgetExceeded, enumerate_paths, iter_paths, local_rule_successors, propagator_column,
    propagator_element, propagator_matrix, qft_element, qft_matrix,
)


def test_hh_two_path_cancellation():
    circuit = Circuit(1, [Hadamard(0), Hadamard(0)])
    assert propagator_element(circuit, 0, 1) == 0.0
    assert propagator_element(circuit, 0, 0) == pytest.approx(1.0, abs=1e-15)
    paths = enumerate_paths(circuit, 0, 1)
    # two paths 0->0->1 and 0->1->1 with opposite signs
    assert [p.states for p in paths] == [(0, 0, 1), (0, 1, 1)]
    assert sorted(p.sign for p in paths) == [-1, 1]
    assert sum(p.amplitude for p in paths) == 0


def test_single_hadamard_action():
    (p,) = enumerate_paths(Circuit(1, [Hadamard(0)]), 1, 1)
    assert p.action == pytest.approx(math.pi)
    assert p.amplitude == pytest.approx(-1 / math.sqrt(2))


def test_local_rules():
    assert local_rule_successors(NOT(0), 0, 2) == [(0b10, 1 + 0j)]
    assert local_rule_successors(CNOT(0, 1), 0b10, 2) == [(0b11, 1 + 0j)]
    assert local_rule_successors(Toffoli(0, 1, 2), 0b110, 3) == [(0b111, 1 + 0j)]
    assert local_rule_successors(PhaseOracle((0, 1)), 1, 1) == [(1, -1 + 0j)]
    (a, b) = local_rule_successors(Hadamard(1), 0b01, 2)
    assert a[0] == 0b00 and b[0] == 0b01 and b[1].real < 0


def test_path_count_is_two_to_the_hadamards():
    circuit = Circuit(3, [Hadamard(0), Toffoli(0, 1, 2), Hadamard(1), Hadamard(2), CNOT(2, 0)])
    assert sum(1 for _ in iter_paths(circuit, 0)) == 2**3


def test_classical_circuit_has_one_path():
    circuit = Circuit(3, [NOT(0), Toffoli(0, 1, 2), CNOT(0, 1), Toffoli(0, 1, 2)])
    for z in range(8):
        col = propagator_column(circuit, z)
        assert np.count_nonzero(col) == 1


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4), depth=st.integers(0, 14))
def test_pathsum_matches_dense(seed, n, depth):
    rng = np.random.default_rng(seed)
    circuit = random_circuit(n, depth, rng, max_hadamards=10)
    np.testing.assert_allclose(propagator_matrix(circuit), dense_propagator(circuit).matrix, atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_propagator_is_unitary(seed):
    rng = np.random.default_rng(seed)
    U = propagator_matrix(random_circuit(3, 10, rng))
    np.testing.assert_allclose(U.conj().T @ U, np.eye(8), atol=1e-12)


def test_parallel_matches_serial():
    circuit = random_circuit(4, 14, np.random.default_rng(7), max_hadamards=8)
    np.testing.assert_array_equal(propagator_matrix(circuit, workers=2), propagator_matrix(circuit))


def test_budget_enforced():
    circuit = Circuit(1, [Hadamard(0)] * 25)
    with pytest.raises(PathBudgetExceeded) as info:
        propagator_element(circuit, 0, 0)
    assert info.value.hadamards == 25


def test_index_validation():
    with pytest.raises(ValueError):
        propagator_element(Circuit(2, []), 4, 0)
    with pytest.raises(ValueError):
        enumerate_paths(Circuit(2, []), 0, -1)


def test_hadamard_transform_qft():
    n = 3
    layer = Circuit(n, [Hadamard(j) for j in range(n)])
    np.testing.assert_allclose(qft_matrix("Z2n", n), propagator_matrix(layer), atol=1e-15)


def test_cyclic_qft_is_dft():
    n = 3
    N = 2**n
    dft = np.fft.ifft(np.eye(N), axis=0, norm="ortho")
    np.testing.assert_allclose(qft_matrix("ZN", n), dft, atol=1e-14)
    assert qft_element("ZN", 2, 1, 1) == pytest.approx(0.5j)
    with pytest.raises(ValueError):
        qft_element("Z3", 2, 0, 0)


@pytest.mark.parametrize("z_in, z_out", list(itertools.product(range(4), repeat=2)))
def test_two_qubit_hadamard_signs(z_in, z_out):
    circuit = Circuit(2, [Hadamard(0), Hadamard(1)])
    expected = 0.5 * (-1) ** bin(z_in & z_out).count("1")
    assert propagator_element(circuit, z_in, z_out) == pytest.approx(expected)
