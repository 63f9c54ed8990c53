"""Small dense linear-algebra kernel for qubit states.

Basis convention: index ``b = sum_j b_j 2**(N-j)`` with qubit 1 as the most
significant bit, and ``|0>`` the +1 eigenstate of sigma_z.
"""

from dataclasses import dataclass

import numpy as np

from .validation import (
    CONSTRUCTION_TOL,
    DegenerateGroundStateError,
    ValidationError,
    check_hermitian,
    check_state_vector,
    check_unit_vector,
)

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

MAX_DENSE_DIM = 2**12


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized pure state of ``n_qubits`` qubits.

    Amplitudes are stored read-only; pass any array-like of length 2**N.
    Inputs within 1e-9 of unit norm are accepted and renormalized.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        psi, _ = check_state_vector(self.amplitudes)
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @property
    def n_qubits(self):
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self):
        return self.amplitudes.size

    def tensor(self):
        """Amplitudes reshaped to one axis of length 2 per qubit."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def fidelity(self, other):
        """Overlap magnitude |<self|other>|, insensitive to global phase."""
        other = as_state(other)
        if other.dim != self.dim:
            raise ValidationError("states have different dimensions")
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))

    @classmethod
    def basis(cls, bits):
        """Computational basis state from a bit string such as ``"010"``."""
        bits = str(bits)
        if not bits or set(bits) - {"0", "1"}:
            raise ValidationError(f"invalid bit string {bits!r}")
        psi = np.zeros(2 ** len(bits), dtype=complex)
        psi[int(bits, 2)] = 1.0
        return cls(psi)

    @classmethod
    def ghz(cls, n_qubits):
        psi = np.zeros(2**n_qubits, dtype=complex)
        psi[0] = psi[-1] = 1 / np.sqrt(2)
        return cls(psi)


def as_state(state):
    return state if isinstance(state, QuantumState) else QuantumState(state)


def spin_projection(n):
    """Observable ``n . sigma`` for a unit vector ``n``; eigenvalues are +-1."""
    n = check_unit_vector(n)
    return np.tensordot(n, PAULI, axes=1)


def _apply_axis(tensor, op, axis):
    out = np.tensordot(op, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def apply_local(state, op, qubit):
    """Apply a 2x2 operator to one qubit (1-based); returns the raw vector."""
    state = as_state(state)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValidationError(f"local operator must be 2x2, got {op.shape}")
    if isinstance(qubit, bool) or not 1 <= int(qubit) <= state.n_qubits:
        raise ValidationError(f"qubit index {qubit} out of range 1..{state.n_qubits}")
    return _apply_axis(state.tensor(), op, int(qubit) - 1).reshape(-1)


def expectation_product(state, local_ops):
    """<psi| A_1 x ... x A_N |psi> without forming the full Kronecker product."""
    state = as_state(state)
    ops = list(local_ops)
    if len(ops) != state.n_qubits:
        raise ValidationError(
            f"expected {state.n_qubits} local operators, got {len(ops)}"
        )
    t = state.tensor()
    out = t
    for axis, op in enumerate(ops):
        op = check_hermitian(op, shape=(2, 2))
        out = _apply_axis(out, op, axis)
    return float(np.vdot(t, out).real)


def fix_phase(v):
    """Rotate the global phase so the largest-magnitude amplitude is real positive."""
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    out = v * (abs(v[k]) / v[k])
    out[k] = abs(v[k])
    return out


def ground_eigenpair(h_matrix, gap_tol=0.0):
    """Lowest eigenvalue, its eigenvector and the gap to the next eigenvalue.

    Raises DegenerateGroundStateError if the gap is below ``gap_tol``.
    """
    m = check_hermitian(h_matrix)
    dim = m.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValidationError(f"operator dimension must be a power of 2, got {dim}")
    if dim > MAX_DENSE_DIM:
        raise ValidationError(f"dense eigensolve limited to dim <= {MAX_DENSE_DIM}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    energy, gap = float(w[0]), float(w[1] - w[0])
    if gap < gap_tol:
        raise DegenerateGroundStateError(
            f"ground state degenerate: gap {gap:.3g} < {gap_tol:.3g}", energy, gap
        )
    vec = fix_phase(v[:, 0])
    return energy, QuantumState(vec / np.linalg.norm(vec)), gap


def is_normalized(state, tol=CONSTRUCTION_TOL):
    return abs(np.linalg.norm(as_state(state).amplitudes) - 1.0) <= tol
