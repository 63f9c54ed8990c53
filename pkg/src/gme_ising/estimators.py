"""scikit-learn style wrappers around the functional API."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .optimizer import OptimizerConfig, maximize
from .qkernel import as_state
from .svetlichny import SignVariant, bell_value
from .sweep import find_threshold
from .tfim import ground_state
from .validation import ValidationError, check_field


def _field_column(X):
    h = np.asarray(X, dtype=float)
    if h.ndim == 2 and h.shape[1] == 1:
        h = h[:, 0]
    if h.ndim != 1:
        raise ValidationError(f"expected a column of field values, got shape {h.shape}")
    return np.array([check_field(x) for x in h])


class TfimGroundState(TransformerMixin, BaseEstimator):
    """Maps transverse fields to ground-state amplitude rows of length 2**N."""

    def __init__(self, n_qubits=3):
        self.n_qubits = n_qubits

    def fit(self, X=None, y=None):
        ground_state(self.n_qubits, 0.0)
        self.n_features_out_ = 2**self.n_qubits
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = [ground_state(self.n_qubits, h)[0].amplitudes for h in _field_column(X)]
        return np.array(rows)


class SvetlichnyMaximizer(BaseEstimator):
    """Fits optimal measurement settings to a pure state.

    After ``fit`` the attributes ``value_``, ``settings_``, ``sweeps_used_`` and
    ``restart_index_`` describe the best see-saw run; ``score`` evaluates the
    fitted settings on another state of the same size.
    """

    def __init__(self, variant="minus", restarts=64, max_sweeps=200,
                 improvement_tol=1e-12, seed=0, threads=1):
        self.variant = variant
        self.restarts = restarts
        self.max_sweeps = max_sweeps
        self.improvement_tol = improvement_tol
        self.seed = seed
        self.threads = threads

    def _config(self):
        return OptimizerConfig(self.restarts, self.max_sweeps, self.improvement_tol,
                               self.seed, self.threads)

    def fit(self, X, y=None):
        state = as_state(X)
        res = maximize(state, SignVariant.parse(self.variant), self._config())
        self.n_qubits_ = state.n_qubits
        self.value_ = res.value
        self.settings_ = res.settings
        self.sweeps_used_ = res.sweeps_used
        self.restart_index_ = res.restart_index
        self.violated_ = res.value > 1 + 1e-9
        return self

    def score(self, X, y=None):
        check_is_fitted(self, "settings_")
        return bell_value(as_state(X), self.settings_, self.variant)


class ViolationThreshold(BaseEstimator):
    """Locates the field beyond which the ground state stops violating.

    ``predict`` labels field values below ``threshold_`` as violating.
    """

    def __init__(self, n_qubits=3, variant=None, bracket=None, tol=1e-3,
                 restarts=64, max_sweeps=200, seed=0):
        self.n_qubits = n_qubits
        self.variant = variant
        self.bracket = bracket
        self.tol = tol
        self.restarts = restarts
        self.max_sweeps = max_sweeps
        self.seed = seed

    def fit(self, X=None, y=None):
        cfg = OptimizerConfig(restarts=self.restarts, max_sweeps=self.max_sweeps, seed=self.seed)
        self.result_ = find_threshold(self.n_qubits, self.variant, cfg, self.bracket, self.tol)
        self.threshold_ = self.result_.h_star
        return self

    def predict(self, X):
        check_is_fitted(self, "threshold_")
        return _field_column(X) < self.threshold_
