"""Simulation and certification toolkit for single-qubit gate self-testing."""

from .core import (
    ChoiChannel,
    GateLabel,
    Povm,
    QuantumModel,
    QubitState,
    Violation,
    apply_channel,
    adjoint_apply,
    avg_gate_fidelity,
    choi_of_unitary,
    compose,
    diamond_bound,
    entanglement_fidelity,
    rotate_model,
    state_from_ket,
    target_s_gate_model,
    target_universal_model,
    validate,
)
from .errors import DegenerateModelError, SchemaError, ValidationError
from .protocol import (
    ProtocolSpec,
    RunResult,
    parse_sequence,
    format_sequence,
    pass_probability,
    run_protocol,
    s_gate_spec,
    sample_complexity,
    sequence_success_probabilities,
    universal_spec,
)
from .selftest import Frames, GaugeReport, certify, extract_frames, gauge_unitary
from .noise import (
    NoiseConfig,
    amplitude_damping_channel,
    depolarizing_channel,
    random_noisy_model,
    random_su2_unitary,
    su2_rotation,
)
from .sweep import ScatterPoint, SweepSummary, export_csv, read_points_csv, scatter_sweep
from .universal import (
    UniversalReport,
    check_purity_after_double,
    extract_unitary,
    verify_universal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
