import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpathsum.algorithms import (
    AmplitudeProfile, GroverInstance, bitflip_to_phase_oracle, deutsch_circuit, deutsch_run,
    grover_circuit, grover_iterate, grover_step_element, grover_step_matrix, grover_success_curve,
)
from qpathsum.core import dense_propagator, gate_matrix, single_qubit_op, H
from qpathsum.gates import BitFlipOracle, Circuit, Hadamard, PhaseOracle
from qpathsum.pathsum import propagator_column


@pytest.mark.parametrize("f, verdict", [((0, 0), "constant"), ((1, 1), "constant"),
                                         ((0, 1), "balanced"), ((1, 0), "balanced")])
def test_deutsch_classifies(f, verdict):
    result = deutsch_run(f)
    assert result.verdict == verdict
    assert result.probability == pytest.approx(1.0, abs=1e-12)
    # 3 Hadamards -> 8 paths from |00>, spread over the four outputs
    assert len(result.paths) == 8


def test_deutsch_matches_dense_circuit():
    for f in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        circuit = deutsch_circuit(f)
        np.testing.assert_allclose(propagator_column(circuit, 0), dense_propagator(circuit).matrix[:, 0],
                                   atol=1e-15)


def test_deutsch_rejects_bad_table():
    with pytest.raises(ValueError):
        deutsch_run((0, 2))
    with pytest.raises(ValueError):
        deutsch_run((0, 1, 1))


@pytest.mark.parametrize("table", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_phase_kickback(table):
    oracle = BitFlipOracle(table, target=1)
    Ht = single_qubit_op(H, 1, 2)
    expected = Ht @ gate_matrix(oracle, 2) @ Ht
    np.testing.assert_allclose(gate_matrix(bitflip_to_phase_oracle(oracle, 2), 2), expected, atol=1e-14)


def test_grover_instance_validation():
    with pytest.raises(ValueError):
        GroverInstance(2, 4)
    with pytest.raises(ValueError):
        GroverInstance(0, 0)


@pytest.mark.parametrize("n, w", [(1, 0), (2, 1), (3, 5), (4, 9)])
def test_step_matrix_matches_dense_gates(n, w):
    inst = GroverInstance(n, w)
    N = inst.N
    layer = [Hadamard(j) for j in range(n)]
    oracle = PhaseOracle(tuple(int(z == w) for z in range(N)))
    reflect = PhaseOracle(tuple(int(z != 0) for z in range(N)))
    U = dense_propagator(Circuit(n, [oracle, *layer, reflect, *layer])).matrix
    np.testing.assert_allclose(grover_step_matrix(inst), U, atol=1e-13)


def test_step_element_formula():
    inst = GroverInstance(2, 1)
    assert grover_step_element(inst, 1, 1) == pytest.approx(-(0.5 - 1))
    assert grover_step_element(inst, 0, 1) == pytest.approx(-0.5)
    assert grover_step_element(inst, 0, 2) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        grover_step_element(inst, 4, 0)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 6), data=st.data())
def test_iterate_matches_matrix_and_preserves_norm(n, data):
    w = data.draw(st.integers(0, 2**n - 1))
    inst = GroverInstance(n, w)
    rng = np.random.default_rng(data.draw(st.integers(0, 1000)))
    a = rng.normal(size=inst.N) + 1j * rng.normal(size=inst.N)
    a /= np.linalg.norm(a)
    out = grover_iterate(AmplitudeProfile(a), inst)
    np.testing.assert_allclose(out.amplitudes, grover_step_matrix(inst) @ a, atol=1e-12)
    assert out.norm == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("w", range(4))
def test_n4_single_iteration_is_certain(w):
    curve = grover_success_curve(GroverInstance(2, w), 1)
    assert curve[1][1] == pytest.approx(1.0, abs=1e-12)


def test_success_curve_closed_form():
    # sin^2((2k+1) theta) with sin(theta) = 1/sqrt(N)
    inst = GroverInstance(6, 17)
    theta = math.asin(1 / math.sqrt(inst.N))
    for k, p in grover_success_curve(inst, 20):
        assert p == pytest.approx(math.sin((2 * k + 1) * theta) ** 2, abs=1e-12)


def test_success_curve_peak_n1024():
    curve = grover_success_curve(GroverInstance(10, 700), 60)
    k_best = max(curve, key=lambda kp: kp[1])[0]
    assert k_best == 25  # frozen: round(pi/4 * 32) = 25


def test_success_curve_bounds():
    with pytest.raises(ValueError):
        grover_success_curve(GroverInstance(2, 0), 10_001)


def test_gate_level_circuit_matches_iterates():
    inst = GroverInstance(3, 6)
    profile = AmplitudeProfile.uniform(inst.N)
    for k in range(4):
        column = propagator_column(grover_circuit(inst, k), 0)
        np.testing.assert_allclose(column, profile.amplitudes, atol=1e-12)
        profile = grover_iterate(profile, inst)
