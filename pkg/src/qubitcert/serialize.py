"""JSON encoding of models, protocol specs, and reports.

Conventions: a complex number is a two-element array [re, im]; a matrix is
a row-major nested list of such pairs.  A model document has the keys
"state" (2x2), "channels" (label -> 4x4 Choi matrix, labels from
{"s", "S", "h", "t"}), and "povm" ({"m_plus": 2x2, "m_minus": 2x2},
m_minus optional and defaulting to the complement).  Outcome strings are
written as ASCII "+"/"-"; the Unicode minus sign is accepted on read.
"""

from __future__ import annotations

import numpy as np

from .core import ChoiChannel, GateLabel, Povm, QuantumModel, QubitState
from .errors import SchemaError
from .protocol import (OUTCOME_MINUS, OUTCOME_PLUS, ProtocolSpec, RunResult,
                       format_sequence, parse_sequence)
from .selftest import GaugeReport
from .universal import UniversalReport

_MINUS_ALIASES = {OUTCOME_MINUS, "−"}


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(obj, what: str = "value") -> complex:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                       for x in obj)):
        raise SchemaError(f"{what}: expected a [re, im] pair, got {obj!r}")
    return complex(obj[0], obj[1])


def matrix_to_json(mat: np.ndarray) -> list[list[list[float]]]:
    mat = np.asarray(mat, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in mat]


def matrix_from_json(obj, shape: tuple[int, int], what: str = "matrix") -> np.ndarray:
    rows, cols = shape
    if not isinstance(obj, list) or len(obj) != rows:
        raise SchemaError(f"{what}: expected {rows} rows")
    out = np.empty(shape, dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{what}: row {i} must have {cols} entries")
        for j, entry in enumerate(row):
            out[i, j] = complex_from_json(entry, f"{what}[{i}][{j}]")
    return out


def _require_keys(data, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(data, dict):
        raise SchemaError(f"{what}: expected an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise SchemaError(f"{what}: missing keys {missing}")


def model_to_json(model: QuantumModel) -> dict:
    return {
        "state": matrix_to_json(model.state.mat),
        "channels": {label.value: matrix_to_json(ch.choi)
                     for label, ch in model.channels.items()},
        "povm": {"m_plus": matrix_to_json(model.povm.m_plus),
                 "m_minus": matrix_to_json(model.povm.m_minus)},
    }


def model_from_json(data) -> QuantumModel:
    _require_keys(data, ("state", "channels", "povm"), "model")
    state = matrix_from_json(data["state"], (2, 2), "state")
    if not isinstance(data["channels"], dict) or not data["channels"]:
        raise SchemaError("model: channels must be a non-empty object")
    channels = {}
    for key, raw in data["channels"].items():
        try:
            label = GateLabel(key)
        except ValueError:
            raise SchemaError(f"model: unknown gate label {key!r}") from None
        channels[label] = ChoiChannel(
            matrix_from_json(raw, (4, 4), f"channels[{key}]"))
    povm_data = data["povm"]
    _require_keys(povm_data, ("m_plus",), "povm")
    m_plus = matrix_from_json(povm_data["m_plus"], (2, 2), "povm m_plus")
    if "m_minus" in povm_data:
        m_minus = matrix_from_json(povm_data["m_minus"], (2, 2), "povm m_minus")
    else:
        m_minus = np.eye(2, dtype=complex) - m_plus
    return QuantumModel(QubitState(state), channels, Povm(m_plus, m_minus))


def spec_to_json(spec: ProtocolSpec) -> dict:
    return {
        "sequences": [format_sequence(seq) for seq in spec.sequences],
        "mu": list(spec.mu),
        "outcomes": [spec.outcomes[seq] for seq in spec.sequences],
    }


def spec_from_json(data) -> ProtocolSpec:
    _require_keys(data, ("sequences", "mu", "outcomes"), "spec")
    seqs, mu, outs = data["sequences"], data["mu"], data["outcomes"]
    if not (isinstance(seqs, list) and isinstance(mu, list)
            and isinstance(outs, list)):
        raise SchemaError("spec: sequences, mu, outcomes must be arrays")
    if not (len(seqs) == len(mu) == len(outs)):
        raise SchemaError("spec: sequences, mu, outcomes must have equal length")
    sequences = []
    for s in seqs:
        if not isinstance(s, str):
            raise SchemaError(f"spec: sequence {s!r} is not a string")
        try:
            sequences.append(parse_sequence(s))
        except ValueError as exc:
            raise SchemaError(f"spec: {exc}") from None
    outcomes = []
    for o in outs:
        if o == OUTCOME_PLUS:
            outcomes.append(OUTCOME_PLUS)
        elif o in _MINUS_ALIASES:
            outcomes.append(OUTCOME_MINUS)
        else:
            raise SchemaError(f"spec: outcome {o!r} is not '+' or '-'")
    masses = []
    for m in mu:
        if not isinstance(m, (int, float)) or isinstance(m, bool):
            raise SchemaError(f"spec: mass {m!r} is not a number")
        masses.append(float(m))
    try:
        return ProtocolSpec(tuple(sequences),
                            dict(zip(sequences, outcomes)),
                            tuple(masses))
    except ValueError as exc:
        raise SchemaError(f"spec: {exc}") from None


def gauge_report_to_json(report: GaugeReport) -> dict:
    return {
        "gauge": matrix_to_json(report.gauge),
        "favg_s": report.favg_s,
        "favg_sinv": report.favg_sinv,
        "state_fidelity": report.state_fidelity,
        "meas_spectral_distance": report.meas_spectral_distance,
        "model_distance": report.model_distance,
        "epsilon_fail": report.epsilon_fail,
    }


def run_result_to_json(result: RunResult) -> dict:
    return {
        "verdict": result.verdict,
        "repetitions_executed": result.repetitions_executed,
        "failing_sequence": (None if result.failing_sequence is None
                             else format_sequence(result.failing_sequence)),
        "observed_outcome": result.observed_outcome,
    }


def universal_report_to_json(report: UniversalReport) -> dict:
    return {
        "verdict": report.verdict,
        "checks": [{"name": name, "ok": ok} for name, ok in report.checks],
        "conjugated": report.conjugated,
        "t_branch": report.t_branch,
        "gauge": None if report.gauge is None else matrix_to_json(report.gauge),
        "extracted": {label.value: matrix_to_json(u)
                      for label, u in report.extracted.items()},
    }
