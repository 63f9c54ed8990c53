"""Seevinck-Svetlichny Bell expressions for N qubits.

The expression is normalized so that every biseparable (and every hybrid
local/nonlocal) model satisfies ``I <= 1``::

    I = 2**-(N-1) * sum_K V(kappa(K)) * Q_K

where ``K`` runs over all N-tuples of setting labels in {1, 2}, ``kappa`` is
the number of 2s in ``K`` and ``V`` is one of the two sign sequences.
"""

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .qkernel import PAULI, as_state, expectation_product, spin_projection
from .validation import ValidationError, check_unit_vector


class SignVariant(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown sign variant {value!r}") from None

    def coefficient(self, kappa):
        return sign_coefficient(self, kappa)

    @property
    def complex_weight(self):
        # V(kappa) = Re[w * i**kappa], with w = 1 + i (plus) or 1 - i (minus)
        return 1 + 1j if self is SignVariant.PLUS else 1 - 1j


def sign_coefficient(variant, kappa):
    """(-1)**(kappa(kappa+1)/2) for PLUS, (-1)**(kappa(kappa-1)/2) for MINUS."""
    variant = SignVariant.parse(variant)
    kappa = int(kappa)
    if kappa < 0:
        raise ValidationError("kappa must be >= 0")
    shift = 1 if variant is SignVariant.PLUS else -1
    return -1 if (kappa * (kappa + shift) // 2) % 2 else 1


def angles_to_vector(theta, phi):
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def vector_to_angles(n):
    """Canonical (theta, phi) with theta in [0, pi] and phi in [0, 2 pi)."""
    x, y, z = np.asarray(n, dtype=float)
    theta = float(np.arccos(np.clip(z, -1.0, 1.0)))
    phi = float(np.arctan2(y, x)) % (2 * np.pi)
    if phi >= 2 * np.pi:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Two measurement directions per party.

    ``vectors[j, k]`` is the unit Bloch vector of setting ``k+1`` for party
    ``j+1``; the array has shape (N, 2, 3).
    """

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 3 or v.shape[1:] != (2, 3) or v.shape[0] < 1:
            raise ValidationError(f"settings must have shape (N, 2, 3), got {v.shape}")
        v = np.stack([[check_unit_vector(n) for n in pair] for pair in v])
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def n_parties(self):
        return self.vectors.shape[0]

    @classmethod
    def from_angles(cls, theta, phi):
        """Build from arrays of shape (N, 2) holding theta and phi in radians."""
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        if theta.shape != phi.shape or theta.ndim != 2 or theta.shape[1] != 2:
            raise ValidationError("theta and phi must both have shape (N, 2)")
        return cls(np.moveaxis(angles_to_vector(theta, phi), 0, -1))

    @classmethod
    def uniform(cls, n_parties, n1, n2=None):
        """Every party uses the same pair of directions."""
        n2 = n1 if n2 is None else n2
        return cls(np.tile(np.array([n1, n2], dtype=float), (n_parties, 1, 1)))

    @classmethod
    def random(cls, n_parties, rng):
        g = rng.normal(size=(n_parties, 2, 3))
        return cls(g / np.linalg.norm(g, axis=-1, keepdims=True))

    def angles(self):
        """Canonical angles as two (N, 2) arrays (theta, phi)."""
        pairs = [[vector_to_angles(n) for n in pair] for pair in self.vectors]
        arr = np.array(pairs)
        return arr[..., 0], arr[..., 1]

    def observable(self, party, setting):
        """Spin observable of ``party`` (1-based) for ``setting`` in {1, 2}."""
        return spin_projection(self.vectors[party - 1, setting - 1])

    def permuted(self, order):
        """Reorder parties: new party j is old party ``order[j]`` (0-based)."""
        return MeasurementSettings(self.vectors[list(order)])


def setting_indices(n_parties):
    """All setting tuples K in lexicographic order, labels in {1, 2}."""
    return itertools.product((1, 2), repeat=n_parties)


def kappa(K):
    return sum(1 for k in K if k == 2)


def _check_dims(state, settings):
    if settings.n_parties != state.n_qubits:
        raise ValidationError(
            f"settings describe {settings.n_parties} parties but the state has "
            f"{state.n_qubits} qubits"
        )


def correlation(state, settings, K):
    """Quantum correlation Q_K = <X_{k_1} x ... x X_{k_N}>."""
    state = as_state(state)
    _check_dims(state, settings)
    K = tuple(int(k) for k in K)
    if len(K) != settings.n_parties or set(K) - {1, 2}:
        raise ValidationError(f"invalid setting index {K!r}")
    ops = [settings.observable(j + 1, k) for j, k in enumerate(K)]
    return expectation_product(state, ops)


def bell_value(state, settings, variant=SignVariant.MINUS):
    """Explicit sum over all 2**N correlation functions."""
    state = as_state(state)
    _check_dims(state, settings)
    variant = SignVariant.parse(variant)
    n = state.n_qubits
    total = 0.0
    for K in setting_indices(n):
        total += sign_coefficient(variant, kappa(K)) * correlation(state, settings, K)
    return total / 2 ** (n - 1)


def bell_value_3q(state, settings):
    """Three-qubit Svetlichny expression written out term by term."""
    state = as_state(state)
    if state.n_qubits != 3:
        raise ValidationError("bell_value_3q needs a three-qubit state")
    _check_dims(state, settings)

    def q(k1, k2, k3):
        return correlation(state, settings, (k1, k2, k3))

    return (
        q(1, 1, 1) + q(1, 1, 2) + q(1, 2, 1) + q(2, 1, 1)
        - q(1, 2, 2) - q(2, 1, 2) - q(2, 2, 1) - q(2, 2, 2)
    ) / 4


def local_complex_operators(vectors):
    """(n1 + i n2) . sigma for arrays of vector pairs with shape (..., 2, 3)."""
    z = vectors[..., 0, :] + 1j * vectors[..., 1, :]
    return np.tensordot(z, PAULI, axes=([-1], [0]))


def factorized_value(state, settings, variant=SignVariant.MINUS):
    """Same quantity as :func:`bell_value` from the complex product form.

    ``sum_K i**kappa X_K`` factorizes into ``(X1 + i X2)`` on every party, so
    one pass over the qubits replaces the 2**N correlation functions.
    """
    state = as_state(state)
    _check_dims(state, settings)
    variant = SignVariant.parse(variant)
    t = state.tensor()
    out = t
    for axis, op in enumerate(local_complex_operators(settings.vectors)):
        out = np.moveaxis(np.tensordot(op, out, axes=([1], [axis])), 0, axis)
    amp = np.vdot(t, out)
    return float((variant.complex_weight * amp).real) / 2 ** (state.n_qubits - 1)
