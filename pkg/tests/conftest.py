import numpy as np
import pytest

from svsched import StateVector


def basis_state(num_qubits: int, index: int) -> StateVector:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def dominant_basis_index(state: StateVector) -> int:
    idx = int(np.argmax(np.abs(state.amplitudes)))
    assert abs(abs(state.amplitudes[idx]) - 1.0) < 1e-9, "state is not a basis state"
    return idx


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
