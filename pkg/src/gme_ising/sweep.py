"""Violation-versus-field curves and threshold fields."""

import csv
import io
import json
import logging
import warnings
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from .optimizer import OptimizerConfig, maximize
from .svetlichny import MeasurementSettings, SignVariant
from .tfim import MAX_QUBITS, MIN_QUBITS, ground_state
from .validation import ValidationError, check_field, check_n_qubits

log = logging.getLogger(__name__)

VIOLATION_MARGIN = 1e-9
MONOTONE_NOISE = 1e-4
BOTH = "both"


class BracketError(ValueError):
    """The threshold bracket does not enclose a change of violation."""


def is_violated(value):
    return value > 1.0 + VIOLATION_MARGIN


def resolve_variants(n_qubits, variant=None):
    """Variants to evaluate; odd N defaults to both since they are inequivalent."""
    if variant is None:
        variant = BOTH if n_qubits % 2 else SignVariant.MINUS
    if isinstance(variant, str) and variant.lower() == BOTH:
        return (SignVariant.MINUS, SignVariant.PLUS)
    return (SignVariant.parse(variant),)


def _variant_label(variants):
    return BOTH if len(variants) == 2 else variants[0].value


@dataclass(frozen=True)
class SweepSpec:
    n_qubits: int
    variant: object = None
    h_min: float = 0.0
    h_max: float = 2.0
    points: int = 81
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    def __post_init__(self):
        check_n_qubits(self.n_qubits, MIN_QUBITS, MAX_QUBITS)
        h_min, h_max = check_field(self.h_min, "h_min"), check_field(self.h_max, "h_max")
        if not h_min < h_max:
            raise ValidationError("need h_min < h_max")
        if isinstance(self.points, bool) or int(self.points) != self.points or self.points < 2:
            raise ValidationError("points must be an integer >= 2")
        resolve_variants(self.n_qubits, self.variant)

    @property
    def variants(self):
        return resolve_variants(self.n_qubits, self.variant)

    def grid(self):
        return np.linspace(self.h_min, self.h_max, int(self.points))

    def echo(self):
        return {
            "n_qubits": self.n_qubits,
            "variant": _variant_label(self.variants),
            "h_min": float(self.h_min),
            "h_max": float(self.h_max),
            "points": int(self.points),
            "optimizer": asdict(self.optimizer),
        }


@dataclass(frozen=True, eq=False)
class SweepRow:
    h: float
    value: float
    violated: bool
    settings: MeasurementSettings
    variant: SignVariant
    variant_values: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class SweepResult:
    rows: tuple
    metadata: dict
    warnings: tuple = ()

    @property
    def h(self):
        return np.array([r.h for r in self.rows])

    @property
    def values(self):
        return np.array([r.value for r in self.rows])


def _best_over_variants(state, variants, cfg, warm):
    results = {}
    for v in variants:
        initial = [warm[v]] if warm.get(v) is not None else ()
        results[v] = maximize(state, v, cfg, initial=initial)
    best = max(variants, key=lambda v: results[v].value)
    return best, results


def monotone_violations(h, values, noise=MONOTONE_NOISE):
    """Pairs of consecutive h where the value rises by more than ``noise``."""
    order = np.argsort(h)
    h, values = np.asarray(h)[order], np.asarray(values)[order]
    bad = np.flatnonzero(values[1:] > values[:-1] + noise)
    return [(float(h[i]), float(h[i + 1])) for i in bad]


def sweep_h(spec, warm_start=True, timestamp=False):
    """Maximized Bell value on a uniform field grid.

    With ``warm_start`` each point also runs one extra start from the optimum
    found at the previous grid point.
    """
    variants = spec.variants
    warm = {}
    rows = []
    for h in spec.grid():
        h = float(h)
        state, _, _ = ground_state(spec.n_qubits, h)
        best, results = _best_over_variants(state, variants, spec.optimizer, warm)
        if warm_start:
            warm = {v: r.settings for v, r in results.items()}
        value = results[best].value
        rows.append(
            SweepRow(
                h=h,
                value=value,
                violated=is_violated(value),
                settings=results[best].settings,
                variant=best,
                variant_values={v.value: results[v].value for v in variants},
            )
        )
        log.debug("N=%d h=%.6f value=%.12f", spec.n_qubits, h, value)

    notes = []
    bumps = monotone_violations([r.h for r in rows], [r.value for r in rows])
    if bumps:
        notes.append(f"value increases with h on intervals {bumps}")
        warnings.warn(notes[-1], RuntimeWarning, stacklevel=2)
    metadata = {"spec": spec.echo(), "seed": int(spec.optimizer.seed), "warm_start": warm_start}
    if timestamp:
        metadata["timestamp"] = datetime.now(timezone.utc).isoformat()
    return SweepResult(tuple(rows), metadata, tuple(notes))


@dataclass(frozen=True)
class ThresholdResult:
    h_star: float
    bracket: tuple
    evaluations: tuple
    warnings: tuple = ()


def _scan_bracket(evaluate, step=0.25, h_limit=10.0):
    lo = 0.0
    if not is_violated(evaluate(lo)):
        raise BracketError("no violation at h=0")
    h = step
    while h <= h_limit:
        if not is_violated(evaluate(h)):
            return lo, h
        lo, h = h, h + step
    raise BracketError(f"still violated at h={h_limit}")


def find_threshold(n_qubits, variant=None, cfg=None, bracket=None, tol=1e-3):
    """Bisect for the field where the maximized value stops exceeding 1.

    A point counts as violating when its value exceeds ``1 + 1e-9``. Without
    an explicit bracket, one is found by scanning h in steps of 0.25.
    """
    n_qubits = check_n_qubits(n_qubits, MIN_QUBITS, MAX_QUBITS)
    cfg = cfg or OptimizerConfig()
    variants = resolve_variants(n_qubits, variant)
    if not tol > 0:
        raise ValidationError("tol must be positive")
    evaluations = {}
    warm = {}

    def evaluate(h):
        h = float(h)
        if h not in evaluations:
            state, _, _ = ground_state(n_qubits, h)
            best, results = _best_over_variants(state, variants, cfg, warm)
            evaluations[h] = results[best].value
            if is_violated(results[best].value):
                warm.update({v: r.settings for v, r in results.items()})
        return evaluations[h]

    if bracket is None:
        lo, hi = _scan_bracket(evaluate)
    else:
        lo, hi = (check_field(b, "bracket") for b in bracket)
        if not lo < hi:
            raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
        if not is_violated(evaluate(lo)):
            raise BracketError(f"no violation at lower end h={lo} (value {evaluations[lo]!r})")
        if is_violated(evaluate(hi)):
            raise BracketError(f"still violated at upper end h={hi} (value {evaluations[hi]!r})")
    bracket = (lo, hi)

    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if is_violated(evaluate(mid)):
            lo = mid
        else:
            hi = mid

    hs = sorted(evaluations)
    notes = []
    bumps = monotone_violations(hs, [evaluations[h] for h in hs])
    if bumps:
        notes.append(f"value increases with h on intervals {bumps}")
        warnings.warn(notes[-1], RuntimeWarning, stacklevel=2)
    return ThresholdResult(
        h_star=0.5 * (lo + hi),
        bracket=bracket,
        evaluations=tuple((h, evaluations[h]) for h in hs),
        warnings=tuple(notes),
    )


def _angles_record(settings):
    theta, phi = settings.angles()
    return {"theta": theta.tolist(), "phi": phi.tolist()}


def result_to_dict(result):
    return {
        "metadata": result.metadata,
        "warnings": list(result.warnings),
        "rows": [
            {
                "h": r.h,
                "value": r.value,
                "violated": r.violated,
                "variant": r.variant.value,
                "variant_values": dict(r.variant_values),
                "angles": _angles_record(r.settings),
                "vectors": r.settings.vectors.tolist(),
            }
            for r in result.rows
        ],
    }


def export(result, fmt="csv"):
    """Serialize a sweep as CSV (h,value,violated) or JSON; returns bytes."""
    if not result.rows:
        raise ValidationError("cannot export an empty sweep")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["h", "value", "violated"])
        for r in result.rows:
            writer.writerow([f"{r.h:.12f}", f"{r.value:.12g}", "true" if r.violated else "false"])
        return buf.getvalue().encode()
    if fmt == "json":
        return (json.dumps(result_to_dict(result), indent=2) + "\n").encode()
    raise ValidationError(f"unknown export format {fmt!r}")


def load_json(data):
    """Inverse of ``export(result, "json")``."""
    doc = json.loads(data)
    rows = tuple(
        SweepRow(
            h=r["h"],
            value=r["value"],
            violated=r["violated"],
            settings=MeasurementSettings(np.array(r["vectors"])),
            variant=SignVariant.parse(r["variant"]),
            variant_values=dict(r["variant_values"]),
        )
        for r in doc["rows"]
    )
    return SweepResult(rows, doc["metadata"], tuple(doc.get("warnings", ())))
