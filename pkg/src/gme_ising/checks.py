"""Verification suite behind ``gme-ising verify``."""

from dataclasses import dataclass

import numpy as np

from .optimizer import OptimizerConfig, maximize, seesaw_step
from .oracle import GridSpec, biseparable_probe, fd_gradient_check, grid_search
from .qkernel import QuantumState
from .svetlichny import MeasurementSettings, SignVariant, bell_value
from .tfim import ground_state

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "margin": self.margin, "detail": self.detail}


def angle_set_h0():
    """Measurement angles giving sqrt(2) on the three-site h=0 ground state."""
    q = np.pi
    theta = [[0, q / 2], [0, q / 2], [-q / 4, q / 4]]
    phi = [[q / 3, q / 2], [0, q / 2], [q / 2, q / 2]]
    return MeasurementSettings.from_angles(theta, phi)


def angle_set_h1():
    """Measurement angles quoted for the three-site ground state at h=1."""
    t = 19 * np.pi / 97
    theta = [[-t, t], [-t, 78 * np.pi / 97], [-t, t]]
    p = np.pi / 2
    phi = [[p, p], [-p, p], [p, p]]
    return MeasurementSettings.from_angles(theta, phi)


def _check(name, margin, detail=""):
    return CheckResult(name, bool(margin >= 0), float(margin), detail)


def run_checks(quick=False, seed=0):
    cfg = OptimizerConfig(restarts=16 if quick else 64, seed=seed)
    out = []

    s0 = ground_state(3, 0.0)[0]
    v = bell_value(s0, angle_set_h0(), "minus")
    out.append(_check("reference angles h=0 give sqrt(2)", 1e-9 - abs(v - SQRT2), f"value={v:.12f}"))
    s1 = ground_state(3, 1.0)[0]
    v = bell_value(s1, angle_set_h1(), "minus")
    out.append(_check("reference angles h=1 give 1.08866", 5e-4 - abs(v - 1.08866), f"value={v:.12f}"))

    for n in (3, 4) if quick else (3, 4, 5):
        v = maximize(QuantumState.ghz(n), "minus", cfg).value
        out.append(_check(f"GHZ{n} maximum is sqrt(2)", 1e-6 - abs(v - SQRT2), f"value={v:.12f}"))

    grid = GridSpec(8, 8) if quick else GridSpec(16, 16)
    for h in (0.0, 0.5, 1.0):
        state = ground_state(3, h)[0]
        opt = maximize(state, "minus", cfg).value
        g = grid_search(state, "minus", grid).value
        out.append(_check(
            f"see-saw >= grid {grid.theta_steps}x{grid.phi_steps} at h={h}",
            opt + 1e-9 - g,
            f"seesaw={opt:.10f} grid={g:.10f}",
        ))
        if not quick:
            out.append(_check(f"grid within 0.02 of see-saw at h={h}", 0.02 - (opt - g)))

    samples = 5 if quick else 50
    for n in (3, 4):
        probe = biseparable_probe(n, samples=samples, seed=seed)
        out.append(_check(
            f"biseparable states stay <= 1 (N={n}, {samples}/cut)",
            1 + 1e-6 - probe.value,
            f"max={probe.value:.12f}",
        ))

    rng = np.random.default_rng(seed)
    worst_fd, worst_mono = 0.0, 0.0
    for _ in range(5 if quick else 20):
        n = int(rng.integers(3, 6))
        z = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        state = QuantumState(z / np.linalg.norm(z))
        settings = MeasurementSettings.random(n, rng)
        variant = SignVariant.MINUS if rng.random() < 0.5 else SignVariant.PLUS
        worst_fd = max(worst_fd, fd_gradient_check(state, settings, variant, 1e-5))
        value = bell_value(state, settings, variant)
        for _ in range(10):
            settings, new = seesaw_step(state, settings, variant)
            worst_mono = min(worst_mono, new - value)
            value = new
    out.append(_check("finite differences match effective vectors", 1e-9 - worst_fd, f"max dev={worst_fd:.3g}"))
    out.append(_check("see-saw steps never decrease the value", worst_mono + 1e-12, f"worst step={worst_mono:.3g}"))
    return out
