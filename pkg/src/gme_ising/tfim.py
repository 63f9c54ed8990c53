"""Periodic transverse-field Ising chain: Hamiltonian and ground states.

H = -sum_i (X_i X_{i+1} + h Z_i) with X_{N+1} = X_1 and the Ising coupling
fixed to 1.
"""

from dataclasses import dataclass

import numpy as np

from .qkernel import QuantumState, ground_eigenpair
from .validation import check_field, check_n_qubits

MIN_QUBITS = 3
MAX_QUBITS = 12


@dataclass(frozen=True)
class TfimParams:
    n_qubits: int
    h: float

    def __post_init__(self):
        object.__setattr__(
            self, "n_qubits", check_n_qubits(self.n_qubits, MIN_QUBITS, MAX_QUBITS)
        )
        object.__setattr__(self, "h", check_field(self.h))


@dataclass(frozen=True)
class AnalyticCoefficients:
    gamma1: float
    norm1: float
    gamma2: float
    gamma3: float
    norm2: float


def _params(p, h=None):
    if isinstance(p, TfimParams):
        return p
    return TfimParams(p, h)


def _popcount(idx):
    counts = np.zeros_like(idx)
    x = idx.copy()
    while np.any(x):
        counts += x & 1
        x >>= 1
    return counts


def parity_diagonal(n_qubits):
    """Diagonal of prod_j Z_j: +1 on even bit-weight basis states."""
    idx = np.arange(2**n_qubits)
    return 1 - 2 * (_popcount(idx) & 1)


def build_hamiltonian(p, h=None):
    """Real symmetric 2**N x 2**N matrix of the chain.

    Accepts ``TfimParams`` or ``(n_qubits, h)``.
    """
    p = _params(p, h)
    n = p.n_qubits
    dim = 2**n
    idx = np.arange(dim)
    mat = np.zeros((dim, dim))
    mat[idx, idx] = -p.h * (n - 2 * _popcount(idx))
    for i in range(n):
        j = (i + 1) % n
        flip = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
        mat[idx ^ flip, idx] -= 1.0
    return mat


def ground_state(p, h=None):
    """Ground state, energy and spectral gap of the chain.

    The state is taken from the even-parity sector, which holds the unique
    ground state for h > 0 and the h -> 0+ limit at h = 0. For h > 0 the
    returned gap is E1 - E0 of the full spectrum; at h = 0 the full spectrum
    is degenerate and the gap inside the even sector is returned instead.
    """
    p = _params(p, h)
    mat = build_hamiltonian(p)
    even = np.flatnonzero(parity_diagonal(p.n_qubits) == 1)
    sector = mat[np.ix_(even, even)]
    e_sec, vec_sec, gap_sec = ground_eigenpair(sector, gap_tol=1e-9)
    psi = np.zeros(2**p.n_qubits, dtype=complex)
    psi[even] = vec_sec.amplitudes
    state = QuantumState(psi)
    if p.h == 0.0:
        return state, e_sec, gap_sec

    levels = np.linalg.eigvalsh(mat)
    scale = max(1.0, float(np.max(np.abs(levels))))
    if e_sec > levels[0] + 1e-9 * scale:
        raise RuntimeError(
            f"ground state left the even-parity sector at h={p.h} "
            f"(sector {e_sec!r} vs global {levels[0]!r})"
        )
    return state, float(levels[0]), float(levels[1] - levels[0])


def analytic_coefficients(h):
    h = check_field(h)
    root = np.sqrt(1 + h**4)
    gamma1 = -1 + 2 * h + 2 * np.sqrt(1 - h + h * h)
    gamma2 = -1 + 2 * h * h + 2 * root
    gamma3 = np.sqrt(1 + h * h + root)
    s2 = np.sqrt(2.0)
    norm2 = (
        1
        + 4 * (h + gamma3 / s2) ** 2
        + (4 * h + 2 * s2 * gamma3) ** 2 / (4 * gamma3**2)
        + (gamma2 - 2 * s2 * h / gamma3 + 2 * s2 * h * gamma3) ** 2
    )
    return AnalyticCoefficients(gamma1, 3 + gamma1**2, gamma2, gamma3, norm2)


def analytic_ground_state_3(h):
    """(g1|000> + |011> + |101> + |110>) / sqrt(3 + g1**2)."""
    c = analytic_coefficients(h)
    psi = np.zeros(8, dtype=complex)
    psi[0b000] = c.gamma1
    psi[[0b011, 0b101, 0b110]] = 1.0
    return QuantumState(psi / np.sqrt(c.norm1))


def analytic_ground_state_4_unnormalized(h):
    c = analytic_coefficients(h)
    h = float(h)
    s2 = np.sqrt(2.0)
    g3 = c.gamma3
    bond = h + g3 / s2
    cross = (4 * h + 2 * s2 * g3) / (2 * s2 * g3)
    psi = np.zeros(16, dtype=complex)
    psi[0b0000] = c.gamma2 - 2 * s2 * h * (1 - g3**2) / g3
    psi[[0b0011, 0b0110, 0b1001, 0b1100]] = bond
    psi[[0b0101, 0b1010]] = cross
    psi[0b1111] = 1.0
    return psi, c.norm2


def analytic_ground_state_4(h):
    """Closed-form four-site ground state on the eight even-weight basis states."""
    psi, norm2 = analytic_ground_state_4_unnormalized(h)
    out = psi / np.sqrt(norm2)
    if abs(np.linalg.norm(out) - 1.0) > 1e-9:
        raise RuntimeError("four-site normalization constant does not match")
    return QuantumState(out)
