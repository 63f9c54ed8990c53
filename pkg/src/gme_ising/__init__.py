"""Genuine multipartite entanglement in the transverse-field Ising chain,
detected through maximized Seevinck-Svetlichny Bell values."""

from .estimators import SvetlichnyMaximizer, TfimGroundState, ViolationThreshold
from .optimizer import (
    MaximizationResult,
    OptimizerConfig,
    effective_vectors,
    maximize,
    seesaw_step,
)
from .oracle import GridSpec, biseparable_probe, fd_gradient_check, grid_search
from .qkernel import (
    QuantumState,
    apply_local,
    expectation_product,
    ground_eigenpair,
    spin_projection,
)
from .svetlichny import (
    MeasurementSettings,
    SignVariant,
    bell_value,
    bell_value_3q,
    correlation,
    factorized_value,
    sign_coefficient,
)
from .sweep import SweepSpec, export, find_threshold, load_json, sweep_h
from .tfim import (
    TfimParams,
    analytic_ground_state_3,
    analytic_ground_state_4,
    build_hamiltonian,
    ground_state,
)
from .validation import DegenerateGroundStateError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "DegenerateGroundStateError",
    "GridSpec",
    "MaximizationResult",
    "MeasurementSettings",
    "OptimizerConfig",
    "QuantumState",
    "SignVariant",
    "SvetlichnyMaximizer",
    "SweepSpec",
    "TfimGroundState",
    "TfimParams",
    "ValidationError",
    "ViolationThreshold",
    "analytic_ground_state_3",
    "analytic_ground_state_4",
    "apply_local",
    "bell_value",
    "bell_value_3q",
    "biseparable_probe",
    "build_hamiltonian",
    "correlation",
    "effective_vectors",
    "expectation_product",
    "export",
    "factorized_value",
    "fd_gradient_check",
    "find_threshold",
    "grid_search",
    "ground_eigenpair",
    "ground_state",
    "load_json",
    "maximize",
    "seesaw_step",
    "sign_coefficient",
    "spin_projection",
    "sweep_h",
]
