"""Brute-force checks that do not share code with the see-saw optimizer.

* ``grid_search``: exact maximum over a discrete angle grid (N <= 3).
* ``biseparable_probe``: optimized values of random biseparable states.
* ``fd_gradient_check``: effective vectors against central differences.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .optimizer import OptimizerConfig, effective_vectors, maximize
from .qkernel import PAULI, QuantumState, as_state, expectation_product
from .svetlichny import MeasurementSettings, SignVariant, angles_to_vector, bell_value
from .validation import ValidationError, check_n_qubits

MAX_GRID_EVALUATIONS = 10**9


class GridTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Directions with theta = pi k / theta_steps (k = 0..theta_steps) and
    phi = 2 pi k / phi_steps. The poles are counted once, and doubling both
    step counts gives a grid containing the original one."""

    theta_steps: int
    phi_steps: int

    def __post_init__(self):
        for name in ("theta_steps", "phi_steps"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 2:
                raise ValidationError(f"{name} must be an integer >= 2")

    def directions(self):
        thetas = np.linspace(0.0, np.pi, self.theta_steps + 1)
        phis = 2 * np.pi * np.arange(self.phi_steps) / self.phi_steps
        angles = [(0.0, 0.0)]
        angles += [(t, p) for t in thetas[1:-1] for p in phis]
        angles.append((np.pi, 0.0))
        angles = np.array(angles)
        return angles, angles_to_vector(angles[:, 0], angles[:, 1]).T

    @property
    def antipodal(self):
        # theta grid is symmetric about pi/2; phi + pi stays on grid only for even counts
        return self.phi_steps % 2 == 0


def _antipode_index(dirs):
    # dirs are distinct unit vectors; -d is on the grid iff the grid is antipodal
    dots = dirs @ dirs.T
    return np.argmin(dots, axis=1)


def correlation_tensor(state):
    """T[mu_1..mu_N] = <sigma_mu1 x ... x sigma_muN>, from Pauli expectations."""
    state = as_state(state)
    n = state.n_qubits
    t = np.empty((3,) * n)
    for mus in itertools.product(range(3), repeat=n):
        t[mus] = expectation_product(state, [PAULI[m] for m in mus])
    return t


@dataclass(frozen=True, eq=False)
class GridResult:
    value: float
    settings: MeasurementSettings
    combinations: int
    evaluations: int


def _pair_table(dirs, first):
    i1, i2 = np.meshgrid(first, np.arange(len(dirs)), indexing="ij")
    i1, i2 = i1.ravel(), i2.ravel()
    return dirs[i1] + 1j * dirs[i2], np.stack([i1, i2], axis=1)


def grid_search(
    state, variant=SignVariant.MINUS, grid=GridSpec(8, 8), max_evaluations=MAX_GRID_EVALUATIONS
):
    """Exact maximum of the Bell value over all grid settings, N in {2, 3}.

    The last party is solved exactly for each choice of the others, since the
    value is ``a . n1 + b . n2`` in its vectors. On antipodal grids the first
    vector of every other party is restricted to one hemisphere: negating a
    party's two vectors negates the value, and pairs of negations cancel.
    Whole rows of party-1 choices, then single party-2 choices, are skipped
    when an upper bound on the continuous optimum of the remaining parties
    cannot beat the best grid value found so far, so the result is exact.
    Bound and exact evaluations together are capped at ``max_evaluations``.
    """
    state = as_state(state)
    n = check_n_qubits(state.n_qubits, 2, 3)
    variant = SignVariant.parse(variant)
    w = variant.complex_weight * 2.0 ** -(n - 1)
    angles, dirs = grid.directions()
    n_dirs = len(dirs)
    if grid.antipodal:
        anti = _antipode_index(dirs)
        first = np.flatnonzero(np.arange(n_dirs) < anti)
    else:
        first = np.arange(n_dirs)
    pairs, pair_idx = _pair_table(dirs, first)
    n_pairs = len(pairs)
    combos = n_pairs ** (n - 1)
    tensor = correlation_tensor(state)

    def last_party(weighted, block=4096):
        # weighted: (P, 3) complex; grid maximum over the last party's pair
        val = np.empty(len(weighted))
        iu = np.empty(len(weighted), dtype=int)
        iv = np.empty(len(weighted), dtype=int)
        for lo in range(0, len(weighted), block):
            sl = slice(lo, lo + block)
            su = weighted[sl].real @ dirs.T
            sv = -weighted[sl].imag @ dirs.T
            iu[sl], iv[sl] = np.argmax(su, axis=1), np.argmax(sv, axis=1)
            val[sl] = su.max(axis=1) + sv.max(axis=1)
        return val, iu, iv

    def assemble(choice):
        vecs = [[dirs[i1], dirs[i2]] for i1, i2 in choice]
        return MeasurementSettings(np.array(vecs))

    if n == 2:
        weighted = w * (pairs @ tensor)
        val, iu, iv = last_party(weighted)
        k = int(np.argmax(val))
        best = assemble([pair_idx[k], (iu[k], iv[k])])
        return GridResult(float(val[k]), best, combos, n_pairs)

    # n == 3: party 1 rows, best rows first; party 2 vectorized per row.
    # With M = w (z1 . T), party 3 sees u = Re(z2 M), v = -Im(z2 M); for unit
    # x, y in z2 = x + i y, |u| + |v| <= 2 * spectral norm of the real 6x6 map.
    m_all = w * np.einsum("cm,mnl->cnl", pairs, tensor)
    re, im = m_all.real, m_all.imag
    lin = np.concatenate(
        [np.concatenate([re, -im], axis=2), np.concatenate([-im, -re], axis=2)], axis=1
    )
    row_bound = 2 * np.linalg.norm(lin, ord=2, axis=(1, 2))

    best_val, best_choice = -np.inf, None
    work = n_pairs
    for r in np.argsort(-row_bound, kind="stable"):
        if row_bound[r] <= best_val:
            break
        work += n_pairs
        if work > max_evaluations:
            raise GridTooLargeError(
                f"grid search needs more than {max_evaluations:.0e} evaluations"
            )
        weighted = pairs @ m_all[r]
        ub = np.linalg.norm(weighted.real, axis=1) + np.linalg.norm(weighted.imag, axis=1)
        cand = np.flatnonzero(ub > best_val)
        if cand.size == 0:
            continue
        val, iu, iv = last_party(weighted[cand])
        c = int(np.argmax(val))
        if val[c] > best_val:
            best_val = float(val[c])
            best_choice = (r, cand[c], iu[c], iv[c])

    r1, r2, iu, iv = best_choice
    best = assemble([pair_idx[r1], pair_idx[r2], (iu, iv)])
    return GridResult(best_val, best, combos, work)


def haar_state(n_qubits, rng):
    """Random pure state from normalized complex Gaussian amplitudes."""
    z = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return z / np.linalg.norm(z)


def bipartitions(n_parties):
    """All splits (A, B) of parties 0..N-1 with party 0 in A and B non-empty."""
    rest = range(1, n_parties)
    out = []
    for size in range(0, n_parties - 1):
        for extra in itertools.combinations(rest, size):
            a = (0,) + extra
            b = tuple(j for j in range(n_parties) if j not in a)
            out.append((a, b))
    return out


def product_across(part_a, psi_a, part_b, psi_b):
    """|psi_A> x |psi_B> with the factors placed on the listed qubits."""
    n = len(part_a) + len(part_b)
    joint = np.multiply.outer(
        psi_a.reshape((2,) * len(part_a)), psi_b.reshape((2,) * len(part_b))
    )
    order = list(part_a) + list(part_b)
    return np.moveaxis(joint, range(n), order).reshape(-1)


@dataclass(frozen=True, eq=False)
class ProbeResult:
    value: float
    by_bipartition: dict = field(default_factory=dict)
    worst_state: QuantumState = None


def biseparable_probe(n_qubits, samples=50, seed=0, cfg=None, variants=None):
    """Largest optimized Bell value over random states that factor across a cut.

    For each bipartition, ``samples`` states with Haar-random factors are
    drawn and maximized with both sign variants.
    """
    n = check_n_qubits(n_qubits, 3, 4)
    cfg = cfg or OptimizerConfig(restarts=8, max_sweeps=100, seed=seed)
    variants = variants or (SignVariant.MINUS, SignVariant.PLUS)
    rng = np.random.default_rng(seed)
    best, worst_state, by_cut = -np.inf, None, {}
    for part_a, part_b in bipartitions(n):
        cut_best = -np.inf
        for _ in range(samples):
            psi = product_across(
                part_a, haar_state(len(part_a), rng), part_b, haar_state(len(part_b), rng)
            )
            state = QuantumState(psi)
            for v in variants:
                value = maximize(state, v, cfg).value
                cut_best = max(cut_best, value)
                if value > best:
                    best, worst_state = value, state
        by_cut[(part_a, part_b)] = cut_best
    return ProbeResult(float(best), by_cut, worst_state)


def _tangent_basis(n):
    helper = np.eye(3)[int(np.argmin(np.abs(n)))]
    t1 = np.cross(n, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(n, t1)


def fd_gradient_check(state, settings, variant=SignVariant.MINUS, delta=1e-5):
    """Max deviation between effective-vector derivatives and central differences.

    Each vector is moved along great circles ``cos(d) n + sin(d) t`` for two
    tangent directions; the exact derivative at d = 0 is ``a . t``.
    """
    if not 1e-7 <= delta <= 1e-3:
        raise ValidationError("delta must lie in [1e-7, 1e-3]")
    state = as_state(state)
    variant = SignVariant.parse(variant)
    base = np.array(settings.vectors)
    worst = 0.0
    for party in range(settings.n_parties):
        a, b = effective_vectors(state, settings, party + 1, variant)
        for k, eff in enumerate((a, b)):
            n = base[party, k]
            for t in _tangent_basis(n):
                vals = []
                for d in (delta, -delta):
                    moved = base.copy()
                    moved[party, k] = np.cos(d) * n + np.sin(d) * t
                    vals.append(bell_value(state, MeasurementSettings(moved), variant))
                fd = (vals[0] - vals[1]) / (2 * delta)
                worst = max(worst, abs(fd - eff @ t))
    return worst
