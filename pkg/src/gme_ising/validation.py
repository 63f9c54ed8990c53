"""Input validation helpers shared by the functional API and the estimators."""

import numbers

import numpy as np

# construction-level checks are tighter than input checks
INPUT_TOL = 1e-9
CONSTRUCTION_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when an argument violates a documented precondition."""


class DegenerateGroundStateError(RuntimeError):
    """The two lowest eigenvalues are closer than the requested gap tolerance."""

    def __init__(self, message, energy=None, gap=None):
        super().__init__(message)
        self.energy = energy
        self.gap = gap


def check_n_qubits(n, lo=1, hi=12, name="n_qubits"):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise ValidationError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if not lo <= n <= hi:
        raise ValidationError(f"{name} must lie in [{lo}, {hi}], got {n}")
    return n


def check_field(h, name="h"):
    if isinstance(h, bool) or not isinstance(h, numbers.Real):
        raise ValidationError(f"{name} must be a real number, got {h!r}")
    h = float(h)
    if not np.isfinite(h) or h < 0:
        raise ValidationError(f"{name} must be finite and >= 0, got {h}")
    return h


def check_unit_vector(n, tol=INPUT_TOL):
    """Return ``n`` as a float array of shape (3,), renormalized to unit length."""
    v = np.asarray(n, dtype=float)
    if v.shape != (3,):
        raise ValidationError(f"expected a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("vector has non-finite entries")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"vector is not unit length (norm {norm!r})")
    return v / norm


def check_hermitian(a, tol=INPUT_TOL, shape=None):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"operator must be a square matrix, got shape {m.shape}")
    if shape is not None and m.shape != shape:
        raise ValidationError(f"operator must have shape {shape}, got {m.shape}")
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > tol:
        raise ValidationError(f"operator is not Hermitian (asymmetry {asym:.3g})")
    return m


def check_state_vector(amplitudes, tol=INPUT_TOL):
    """Validate a state vector; returns (complex array renormalized, n_qubits)."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    dim = psi.size
    if dim < 2 or dim & (dim - 1):
        raise ValidationError(f"state dimension must be a power of 2 (>= 2), got {dim}")
    if not np.all(np.isfinite(psi)):
        raise ValidationError("state has non-finite amplitudes")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"state is not normalized (norm {norm!r})")
    return psi / norm, dim.bit_length() - 1
