import functools

import numpy as np
import pytest

from gme_ising import MeasurementSettings, QuantumState

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

_ACCEPTANCE_LINES = []


def kron_all(ops):
    """Full Kronecker product, qubit 1 leftmost (oracle for tensor contractions)."""
    return functools.reduce(np.kron, ops)


def dense_expectation(psi, ops):
    psi = np.asarray(psi, dtype=complex)
    return np.vdot(psi, kron_all(ops) @ psi)


def random_state(rng, n):
    z = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return QuantumState(z / np.linalg.norm(z))


def random_settings(rng, n):
    return MeasurementSettings.random(n, rng)


def h3_golden(h):
    """Eight-by-eight matrix of the three-site chain, typed in row by row."""
    a = h
    return np.array([
        [-3 * a, 0, 0, -1, 0, -1, -1, 0],
        [0, -a, -1, 0, -1, 0, 0, -1],
        [0, -1, -a, 0, -1, 0, 0, -1],
        [-1, 0, 0, a, 0, -1, -1, 0],
        [0, -1, -1, 0, -a, 0, 0, -1],
        [-1, 0, 0, -1, 0, a, -1, 0],
        [-1, 0, 0, -1, 0, -1, a, 0],
        [0, -1, -1, 0, -1, 0, 0, 3 * a],
    ], dtype=float)


def angle_set_h0():
    q = np.pi
    theta = [[0, q / 2], [0, q / 2], [-q / 4, q / 4]]
    phi = [[q / 3, q / 2], [0, q / 2], [q / 2, q / 2]]
    return MeasurementSettings.from_angles(theta, phi)


def angle_set_h1():
    t = 19 * np.pi / 97
    p = np.pi / 2
    theta = [[-t, t], [-t, 78 * np.pi / 97], [-t, t]]
    phi = [[p, p], [-p, p], [p, p]]
    return MeasurementSettings.from_angles(theta, phi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
