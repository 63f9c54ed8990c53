"""See-saw maximization of the Svetlichny expression over measurement directions.

The expression is linear in each party's pair of Bloch vectors, so with every
other party fixed it reads ``a . n1 + b . n2`` and the best choice is
``(a/|a|, b/|b|)``. Sweeping that update over the parties never decreases the
value; random restarts take care of the saddle points.
"""

import string
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .qkernel import PAULI, as_state
from .svetlichny import MeasurementSettings, SignVariant, local_complex_operators
from .validation import ValidationError, check_n_qubits

DEGENERATE_NORM = 1e-14


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_sweeps: int = 200
    improvement_tol: float = 1e-12
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        for name in ("restarts", "max_sweeps", "threads"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value!r}")
        if not self.improvement_tol > 0:
            raise ValidationError("improvement_tol must be positive")
        if isinstance(self.seed, bool) or not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class MaximizationResult:
    value: float
    settings: MeasurementSettings
    sweeps_used: int
    restart_index: int
    variant: SignVariant
    restart_values: np.ndarray = field(repr=False, default=None)


class SeesawEngine:
    """Batched see-saw kernel for one state and one sign variant.

    Settings are handled as raw arrays of shape (R, N, 2, 3) so that many
    restarts advance together.
    """

    def __init__(self, state, variant):
        self.state = as_state(state)
        self.variant = SignVariant.parse(variant)
        self.n = self.state.n_qubits
        check_n_qubits(self.n, 1, 12)
        self.weight = self.variant.complex_weight
        self.scale = 2.0 ** -(self.n - 1)
        self._axes = string.ascii_uppercase[: self.n]
        t = self.state.tensor()
        # conj(sigma_mu on qubit p applied to psi), shape (N, 3, 2, ..., 2)
        self._bra = np.stack(
            [
                np.stack([np.moveaxis(np.tensordot(s, t, axes=([1], [p])), 0, p) for s in PAULI])
                for p in range(self.n)
            ]
        ).conj()

    def _apply(self, x, ops, axis):
        ax = self._axes
        src = "r" + ax
        dst = "r" + ax[:axis] + "y" + ax[axis + 1:]
        spec = f"ryz,{src.replace(ax[axis], 'z')}->{dst}"
        return np.einsum(spec, ops, x)

    def effective(self, vectors, party):
        """Effective vectors (a, b) of ``party`` (0-based) for each row."""
        ops = local_complex_operators(vectors)
        x = np.broadcast_to(self.state.tensor(), (vectors.shape[0],) + (2,) * self.n)
        for j in range(self.n):
            if j != party:
                x = self._apply(x, ops[:, j], j)
        amp = np.einsum(f"m{self._axes},r{self._axes}->rm", self._bra[party], x)
        w = self.weight * amp
        return self.scale * w.real, -self.scale * w.imag

    def value(self, vectors):
        a, b = self.effective(vectors, 0)
        return np.einsum("ri,ri->r", a, vectors[:, 0, 0]) + np.einsum(
            "ri,ri->r", b, vectors[:, 0, 1]
        )

    def sweep(self, vectors):
        """One pass over parties 1..N; returns (new vectors, new values)."""
        v = vectors.copy()
        for p in range(self.n):
            a, b = self.effective(v, p)
            for k, eff in enumerate((a, b)):
                norm = np.linalg.norm(eff, axis=1)
                ok = norm >= DEGENERATE_NORM
                v[ok, p, k] = eff[ok] / norm[ok, None]
        a, b = self.effective(v, self.n - 1)
        vals = np.einsum("ri,ri->r", a, v[:, -1, 0]) + np.einsum("ri,ri->r", b, v[:, -1, 1])
        return v, vals

    def run(self, vectors, max_sweeps, tol):
        """Iterate sweeps until each row improves by less than ``tol``.

        Returns (vectors, values, sweeps_used). A sweep that loses value to
        rounding is discarded, so values never decrease along a run.
        """
        v = np.array(vectors, dtype=float)
        vals = self.value(v)
        used = np.zeros(len(v), dtype=int)
        active = np.arange(len(v))
        for _ in range(max_sweeps):
            if active.size == 0:
                break
            new_v, new_vals = self.sweep(v[active])
            gain = new_vals - vals[active]
            keep = gain >= 0
            v[active[keep]] = new_v[keep]
            vals[active[keep]] = new_vals[keep]
            used[active] += 1
            active = active[keep & (gain >= tol)]
        return v, vals, used


def _settings_array(settings, n):
    if not isinstance(settings, MeasurementSettings):
        settings = MeasurementSettings(settings)
    if settings.n_parties != n:
        raise ValidationError(
            f"settings describe {settings.n_parties} parties, state has {n} qubits"
        )
    return np.array(settings.vectors)


def effective_vectors(state, settings, party, variant=SignVariant.MINUS):
    """Vectors (a, b) with I = a . n1 + b . n2 for ``party`` (1-based)."""
    engine = SeesawEngine(state, variant)
    if isinstance(party, bool) or not 1 <= int(party) <= engine.n:
        raise ValidationError(f"party {party} out of range 1..{engine.n}")
    v = _settings_array(settings, engine.n)[None]
    a, b = engine.effective(v, int(party) - 1)
    return a[0], b[0]


def seesaw_step(state, settings, variant=SignVariant.MINUS):
    """Update every party once, in order; returns (new settings, new value)."""
    engine = SeesawEngine(state, variant)
    v, vals = engine.sweep(_settings_array(settings, engine.n)[None])
    return MeasurementSettings(v[0]), float(vals[0])


def random_start(n_parties, seed, restart_index):
    rng = np.random.default_rng(int(seed) ^ int(restart_index))
    g = rng.normal(size=(n_parties, 2, 3))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def maximize(state, variant=SignVariant.MINUS, cfg=None, initial=()):
    """Best see-saw optimum over ``cfg.restarts`` random starts.

    Restart ``r`` starts from vectors drawn with seed ``cfg.seed ^ r``.
    Settings in ``initial`` are run as extra starts with indices
    ``restarts, restarts + 1, ...``. Ties go to the lowest index.
    """
    cfg = cfg or OptimizerConfig()
    engine = SeesawEngine(state, variant)
    n = engine.n
    starts = [random_start(n, cfg.seed, r) for r in range(cfg.restarts)]
    starts += [_settings_array(s, n) for s in initial]
    starts = np.stack(starts)

    chunks = np.array_split(np.arange(len(starts)), min(cfg.threads, len(starts)))

    def work(idx):
        return engine.run(starts[idx], cfg.max_sweeps, cfg.improvement_tol)

    if len(chunks) == 1:
        parts = [work(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(work, chunks))
    vecs = np.concatenate([p[0] for p in parts])
    vals = np.concatenate([p[1] for p in parts])
    used = np.concatenate([p[2] for p in parts])

    best = int(np.argmax(vals))
    return MaximizationResult(
        value=float(vals[best]),
        settings=MeasurementSettings(vecs[best]),
        sweeps_used=int(used[best]),
        restart_index=best,
        variant=engine.variant,
        restart_values=vals,
    )
