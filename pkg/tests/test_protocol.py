"""Sequence protocol: exact probabilities, Monte Carlo runs, repetition counts."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qubitcert as qc
from qubitcert import gates
from qubitcert.core import GateLabel, Povm, QuantumModel, QubitState
from qubitcert.errors import ValidationError
from qubitcert.protocol import (OUTCOME_MINUS, OUTCOME_PLUS, ProtocolSpec,
                                format_sequence, parse_sequence)


def mixed_plus_state_model(weight: float) -> QuantumModel:
    """Ideal s-gate model with state weight*|+><+| + (1-weight)*|-><-|."""
    base = qc.target_s_gate_model()
    rho = weight * gates.PROJ_PLUS + (1.0 - weight) * gates.PROJ_MINUS
    return QuantumModel(QubitState(rho), base.channels, base.povm)


def test_sequence_round_trip():
    for text in ("", "s", "S", "ssShts", "hth"):
        assert format_sequence(parse_sequence(text)) == text
    with pytest.raises(ValidationError, match="unknown gate letter"):
        parse_sequence("sxz")


def test_s_gate_spec_structure():
    spec = qc.s_gate_spec()
    rendered = [format_sequence(s) for s in spec.sequences]
    assert rendered == ["", "ss", "sS", "Ss", "SS"]
    assert spec.mu == (0.2,) * 5
    assert {format_sequence(k): v for k, v in spec.outcomes.items()} == {
        "": "+", "ss": "-", "sS": "+", "Ss": "+", "SS": "-"}


def test_universal_spec_structure():
    spec = qc.universal_spec()
    rendered = [format_sequence(s) for s in spec.sequences]
    assert rendered == ["", "sS", "Ss", "shs", "hh", "hsh", "hth",
                        "ss", "SS", "Shs", "sshth", "tts"]
    assert all(abs(m - 1 / 12) < 1e-15 for m in spec.mu)
    for seq in rendered[:7]:
        assert spec.outcomes[parse_sequence(seq)] == OUTCOME_PLUS
    for seq in rendered[7:]:
        assert spec.outcomes[parse_sequence(seq)] == OUTCOME_MINUS


def test_spec_rejects_malformed_inputs():
    seqs = (parse_sequence(""), parse_sequence("ss"))
    outs = {seqs[0]: "+", seqs[1]: "-"}
    with pytest.raises(ValidationError, match="duplicate"):
        ProtocolSpec(seqs + (parse_sequence("ss"),), outs, (0.4, 0.3, 0.3))
    with pytest.raises(ValidationError, match="one mass per sequence"):
        ProtocolSpec(seqs, outs, (1.0,))
    with pytest.raises(ValidationError, match="positive"):
        ProtocolSpec(seqs, outs, (1.0, 0.0))
    with pytest.raises(ValidationError, match="sum to 1"):
        ProtocolSpec(seqs, outs, (0.3, 0.3))
    with pytest.raises(ValidationError, match="outcome"):
        ProtocolSpec(seqs, {seqs[0]: "+", seqs[1]: "x"}, (0.5, 0.5))
    with pytest.raises(ValidationError, match="outcome"):
        ProtocolSpec(seqs, {seqs[0]: "+"}, (0.5, 0.5))


def test_target_model_passes_with_certainty():
    p = qc.pass_probability(qc.target_s_gate_model(), qc.s_gate_spec())
    assert abs(p - 1.0) <= 1e-12
    p = qc.pass_probability(qc.target_universal_model(), qc.universal_spec())
    assert abs(p - 1.0) <= 1e-12


def test_zero_state_model_passes_half_the_time():
    # |0><0| is unbiased for every sequence: S^k|0> = |0> up to phase
    base = qc.target_s_gate_model()
    model = QuantumModel(qc.state_from_ket(gates.KET_ZERO), base.channels,
                         base.povm)
    succ = qc.sequence_success_probabilities(model, qc.s_gate_spec())
    assert np.allclose(succ, 0.5, atol=1e-12)
    assert qc.pass_probability(model, qc.s_gate_spec()) == pytest.approx(0.5)


def test_pass_probability_is_mu_weighted_sum():
    model = mixed_plus_state_model(0.8)
    spec = qc.s_gate_spec()
    succ = qc.sequence_success_probabilities(model, spec)
    assert qc.pass_probability(model, spec) == pytest.approx(
        float(np.dot(spec.mu, succ)), abs=1e-15)


def test_pass_probability_with_nonuniform_masses():
    # per-sequence success is 0.9 for the mixed state, so any masses give 0.9
    model = mixed_plus_state_model(0.9)
    spec = qc.s_gate_spec()
    skewed = ProtocolSpec(spec.sequences, spec.outcomes,
                          (0.4, 0.1, 0.2, 0.2, 0.1))
    assert qc.pass_probability(model, skewed) == pytest.approx(0.9, abs=1e-12)


def test_pass_probability_is_gauge_invariant():
    gen = np.random.default_rng(21)
    spec = qc.s_gate_spec()
    model = mixed_plus_state_model(0.7)
    reference = qc.pass_probability(model, spec)
    for _ in range(100):
        u = qc.su2_rotation(gen.standard_normal(3), gen.uniform(0, np.pi))
        rotated = qc.rotate_model(model, u)
        assert abs(qc.pass_probability(rotated, spec) - reference) < 1e-12


def test_missing_label_is_reported():
    base = qc.target_s_gate_model()
    model = QuantumModel(base.state, {GateLabel.S: base.channels[GateLabel.S]},
                         base.povm)
    with pytest.raises(ValidationError, match="no channel for labels"):
        qc.pass_probability(model, qc.s_gate_spec())


def test_run_accepts_target_and_counts_all_repetitions():
    res = qc.run_protocol(qc.target_s_gate_model(), qc.s_gate_spec(), 1000,
                          seed=5)
    assert res.verdict == "accept"
    assert res.repetitions_executed == 1000
    assert res.failing_sequence is None
    assert res.observed_outcome is None


def test_run_rejects_certain_failure_at_first_repetition():
    # |-><-| state fails every sequence with certainty
    model = mixed_plus_state_model(0.0)
    res = qc.run_protocol(model, qc.s_gate_spec(), 50, seed=0)
    assert res.verdict == "reject"
    assert res.repetitions_executed == 1
    assert res.failing_sequence in qc.s_gate_spec().sequences
    assert res.observed_outcome in (OUTCOME_PLUS, OUTCOME_MINUS)


def test_run_is_deterministic_per_seed():
    model = mixed_plus_state_model(0.9)
    spec = qc.s_gate_spec()
    a = qc.run_protocol(model, spec, 29, seed=123)
    b = qc.run_protocol(model, spec, 29, seed=123)
    assert a == b
    outcomes = {qc.run_protocol(model, spec, 29, seed=s).verdict
                for s in range(40)}
    assert outcomes == {"accept", "reject"}


def test_run_rejects_nonpositive_repetitions():
    with pytest.raises(ValidationError, match="at least 1"):
        qc.run_protocol(qc.target_s_gate_model(), qc.s_gate_spec(), 0)


def test_observed_reject_rate_matches_binomial():
    # acceptance probability is 0.9^n for the 0.9 mixture
    model = mixed_plus_state_model(0.9)
    spec = qc.s_gate_spec()
    n = 10
    accepts = sum(qc.run_protocol(model, spec, n, seed=s).verdict == "accept"
                  for s in range(2000))
    p = 0.9 ** n
    sigma = math.sqrt(p * (1 - p) / 2000)
    assert abs(accepts / 2000 - p) < 5 * sigma


def test_sample_complexity_reference_values():
    assert qc.sample_complexity(0.05, 0.05, 5) == 300
    assert qc.sample_complexity(0.01, 0.01, 5) == 2303
    assert qc.sample_complexity(0.1, 0.05, None) == 29
    assert qc.sample_complexity(0.05, 0.05) == math.ceil(
        math.log(1 / 0.05) / math.log(1 / 0.95))


def test_sample_complexity_matches_formulas():
    for eps, delta in ((0.2, 0.1), (0.05, 0.01), (0.01, 0.3)):
        assert qc.sample_complexity(eps, delta, 5) == math.ceil(
            5 / eps * math.log(1 / delta))
        assert qc.sample_complexity(eps, delta) == math.ceil(
            math.log(1 / delta) / math.log(1 / (1 - eps)))


def test_sample_complexity_domain():
    for eps, delta in ((0.0, 0.1), (1.0, 0.1), (0.1, 0.0), (0.1, 1.0)):
        with pytest.raises(ValidationError):
            qc.sample_complexity(eps, delta)
    with pytest.raises(ValidationError, match="slope"):
        qc.sample_complexity(0.1, 0.1, -1.0)


@given(st.floats(min_value=1e-3, max_value=0.5),
       st.floats(min_value=1e-3, max_value=0.5),
       st.floats(min_value=1e-3, max_value=0.4))
@settings(max_examples=200, deadline=None)
def test_sample_complexity_monotone(eps, delta, shrink):
    # tightening either tolerance can only demand more repetitions
    n = qc.sample_complexity(eps, delta)
    assert qc.sample_complexity(eps - eps * shrink, delta) >= n
    assert qc.sample_complexity(eps, delta - delta * shrink) >= n
    m = qc.sample_complexity(eps, delta, 5)
    assert qc.sample_complexity(eps - eps * shrink, delta, 5) >= m
