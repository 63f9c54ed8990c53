import json
import warnings

import numpy as np
import pytest

from gme_ising import OptimizerConfig, SignVariant, ValidationError, export, find_threshold, load_json, sweep_h
from gme_ising.svetlichny import MeasurementSettings
from gme_ising.sweep import BracketError, SweepResult, SweepRow, SweepSpec, monotone_violations, resolve_variants

FAST = OptimizerConfig(restarts=16, max_sweeps=100)


def _row(h, value):
    s = MeasurementSettings.uniform(3, [0.0, 0.0, 1.0])
    return SweepRow(h, value, value > 1 + 1e-9, s, SignVariant.MINUS, {"minus": value})


class TestExport:
    def test_single_row_csv(self):
        result = SweepResult((_row(0.0, np.sqrt(2)),), {})
        assert export(result, "csv") == b"h,value,violated\n0.000000000000,1.41421356237,true\n"

    def test_non_violated_row(self):
        out = export(SweepResult((_row(1.5, 1.0),), {}), "csv").decode()
        assert out.splitlines()[1] == "1.500000000000,1,false"

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            export(SweepResult((), {}), "csv")

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            export(SweepResult((_row(0.0, 1.2),), {}), "xml")

    def test_json_round_trip(self):
        result = sweep_h(SweepSpec(3, h_min=0.0, h_max=1.5, points=4, optimizer=FAST))
        data = export(result, "json")
        back = load_json(data)
        np.testing.assert_array_equal(back.h, result.h)
        np.testing.assert_array_equal(back.values, result.values)
        for a, b in zip(back.rows, result.rows):
            np.testing.assert_array_equal(a.settings.vectors, b.settings.vectors)
            assert a.variant is b.variant and a.violated == b.violated
        assert export(back, "json") == data
        doc = json.loads(data)
        assert doc["metadata"]["spec"]["n_qubits"] == 3
        assert set(doc["rows"][0]["angles"]) == {"theta", "phi"}


class TestSweep:
    def test_small_sweep(self):
        result = sweep_h(SweepSpec(3, variant="minus", h_min=0.0, h_max=2.0, points=5, optimizer=FAST))
        assert len(result.rows) == 5
        np.testing.assert_allclose(result.h, [0, 0.5, 1, 1.5, 2])
        assert result.values[0] == pytest.approx(np.sqrt(2), abs=1e-6)
        assert [r.violated for r in result.rows] == [True, True, True, False, False]
        assert not monotone_violations(result.h, result.values)

    def test_odd_n_records_both_variants(self):
        result = sweep_h(SweepSpec(3, h_min=0.5, h_max=1.0, points=2, optimizer=FAST))
        for r in result.rows:
            assert set(r.variant_values) == {"minus", "plus"}
            assert r.value == max(r.variant_values.values())
        assert result.metadata["spec"]["variant"] == "both"

    def test_even_n_defaults_to_minus(self):
        assert resolve_variants(4) == (SignVariant.MINUS,)
        assert resolve_variants(5) == (SignVariant.MINUS, SignVariant.PLUS)
        assert resolve_variants(4, "both") == (SignVariant.MINUS, SignVariant.PLUS)

    def test_warm_start_never_worse(self):
        spec = SweepSpec(4, h_min=0.6, h_max=1.0, points=5, optimizer=OptimizerConfig(restarts=2, seed=5))
        warm = sweep_h(spec, warm_start=True)
        cold = sweep_h(spec, warm_start=False)
        assert np.all(warm.values >= cold.values)

    def test_metadata_is_reproducible(self):
        spec = SweepSpec(3, h_min=0.0, h_max=0.5, points=2, optimizer=FAST)
        a, b = export(sweep_h(spec), "json"), export(sweep_h(spec), "json")
        assert a == b
        assert "timestamp" in sweep_h(spec, timestamp=True).metadata

    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            SweepSpec(3, h_min=1.0, h_max=1.0)
        with pytest.raises(ValidationError):
            SweepSpec(3, points=1)
        with pytest.raises(ValidationError):
            SweepSpec(2)
        with pytest.raises(ValidationError):
            SweepSpec(3, variant="sideways")


class TestMonotoneHelper:
    def test_detects_rise(self):
        assert monotone_violations([0, 1, 2], [1.4, 1.2, 1.3]) == [(1.0, 2.0)]

    def test_noise_tolerated(self):
        assert monotone_violations([0, 1, 2], [1.4, 1.2, 1.2 + 5e-5]) == []

    def test_warning_emitted(self, monkeypatch):
        import gme_ising.sweep as sw

        values = iter([1.3, 1.1, 1.2])

        class Fake:
            def __init__(self, v):
                self.value = v
                self.settings = MeasurementSettings.uniform(4, [0.0, 0.0, 1.0])

        monkeypatch.setattr(sw, "maximize", lambda *a, **k: Fake(next(values)))
        with pytest.warns(RuntimeWarning):
            result = sw.sweep_h(SweepSpec(4, h_min=0.0, h_max=1.0, points=3))
        assert result.warnings


class TestThreshold:
    def test_rejects_bracket_without_sign_change(self):
        with pytest.raises(BracketError):
            find_threshold(3, cfg=FAST, bracket=(0.0, 0.5))

    def test_rejects_inverted_bracket(self):
        with pytest.raises(BracketError):
            find_threshold(3, cfg=FAST, bracket=(1.5, 1.0))

    def test_bisection_with_bracket(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            res = find_threshold(4, cfg=FAST, bracket=(0.5, 1.5), tol=1e-2)
        lo, hi = res.bracket
        assert (lo, hi) == (0.5, 1.5)
        assert 0.92 < res.h_star < 0.96
        assert len(res.evaluations) >= 8

    def test_tolerance_validated(self):
        with pytest.raises(ValidationError):
            find_threshold(3, cfg=FAST, tol=0)
