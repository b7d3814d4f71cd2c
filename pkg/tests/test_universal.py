"""Four-gate verification: unitarity extraction and branch classification."""

import numpy as np
import pytest

import qubitcert as qc
from qubitcert import gates
from qubitcert.core import ChoiChannel, GateLabel, Povm, QuantumModel, QubitState
from qubitcert.universal import check_purity_after_double, extract_unitary


def t_variant(u) -> QuantumModel:
    """Ideal universal model with the t channel replaced by the unitary u."""
    base = qc.target_universal_model()
    channels = dict(base.channels)
    channels[GateLabel.T] = qc.choi_of_unitary(u)
    return QuantumModel(base.state, channels, base.povm)


def conjugated_model() -> QuantumModel:
    """Entrywise complex conjugate of the whole target; same real statistics."""
    base = qc.target_universal_model()
    return QuantumModel(
        QubitState(base.state.mat.conj()),
        {label: ChoiChannel(ch.choi.conj()) for label, ch in base.channels.items()},
        Povm(base.povm.m_plus.conj(), base.povm.m_minus.conj()))


def unitary_overlap(a, b) -> float:
    return abs(np.trace(np.asarray(a).conj().T @ np.asarray(b))) / 2.0


def test_extract_unitary_round_trips_gates():
    for u in (gates.S, gates.H, gates.T, gates.ZT, gates.X):
        v = extract_unitary(qc.choi_of_unitary(u))
        assert v is not None
        assert unitary_overlap(u, v) == pytest.approx(1.0, abs=1e-12)


def test_extract_unitary_reproduces_random_conjugations():
    gen = np.random.default_rng(61)
    basis = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), gates.PROJ_PLUS,
             0.5 * np.array([[1, -1j], [1j, 1]])]
    for _ in range(1000):
        u = qc.random_su2_unitary(gen, (0.0, np.pi / 4))
        v = extract_unitary(qc.choi_of_unitary(u))
        for rho in basis:
            assert np.max(np.abs(v @ rho @ v.conj().T
                                 - u @ rho @ u.conj().T)) <= 1e-9


def test_extract_unitary_rejects_mixed_channels():
    assert extract_unitary(qc.depolarizing_channel(0.5)) is None
    # gamma = 1 damping is measure-and-prepare; its Choi has rank 2
    assert extract_unitary(qc.amplitude_damping_channel(1.0)) is None


def test_extract_unitary_tolerance_boundary():
    ch = qc.depolarizing_channel(1e-3)
    assert extract_unitary(ch, tol=1e-7) is None
    # top Choi eigenvalue is 1 - 3p/4; a loose tolerance accepts it
    loose = extract_unitary(ch, tol=1e-2)
    assert loose is not None
    assert unitary_overlap(loose, gates.I2) == pytest.approx(1.0, abs=1e-6)


def test_purity_witness():
    for u in (gates.S, gates.H, gates.T):
        assert check_purity_after_double(qc.choi_of_unitary(u), gates.KET_PLUS)
    assert check_purity_after_double(qc.choi_of_unitary(gates.H), gates.KET_ZERO)
    assert not check_purity_after_double(qc.depolarizing_channel(1.0),
                                         gates.KET_PLUS)
    assert not check_purity_after_double(qc.depolarizing_channel(0.3),
                                         gates.KET_ZERO)


def test_target_model_passes_as_t_branch():
    report = qc.verify_universal(qc.target_universal_model())
    assert report.verdict == "pass"
    assert report.conjugated is False
    assert report.t_branch == "T"
    assert set(report.extracted) == {GateLabel.S, GateLabel.S_INV,
                                     GateLabel.H, GateLabel.T}
    assert report.failing_checks == ()
    assert unitary_overlap(report.gauge, gates.I2) == pytest.approx(1.0,
                                                                    abs=1e-9)


def test_zt_model_passes_as_zt_branch():
    report = qc.verify_universal(t_variant(gates.ZT))
    assert report.verdict == "pass"
    assert report.conjugated is False
    assert report.t_branch == "ZT"


def test_conjugated_model_is_recognized():
    report = qc.verify_universal(conjugated_model())
    assert report.verdict == "pass"
    assert report.conjugated is True
    assert report.t_branch == "T"
    # the absorbed X cancels the frame rotation: final gauge ~ identity
    assert unitary_overlap(report.gauge, gates.I2) == pytest.approx(1.0,
                                                                    abs=1e-9)


def test_x_rotated_model_passes_without_conjugation():
    # conjugating the whole model by X swaps the roles of the s gates and
    # turns the Hadamard into XHX, all absorbed by the frame gauge
    report = qc.verify_universal(qc.rotate_model(qc.target_universal_model(),
                                                 gates.X))
    assert report.verdict == "pass"
    assert report.conjugated is False
    assert report.t_branch == "T"
    assert unitary_overlap(report.gauge, gates.X) == pytest.approx(1.0,
                                                                   abs=1e-9)


def test_rotated_models_pass_with_covariant_gauge():
    gen = np.random.default_rng(62)
    base = qc.target_universal_model()
    for _ in range(50):
        v = qc.su2_rotation(gen.standard_normal(3), gen.uniform(0, np.pi))
        report = qc.verify_universal(qc.rotate_model(base, v))
        assert report.verdict == "pass"
        assert report.conjugated is False
        assert report.t_branch == "T"
        assert unitary_overlap(report.gauge, v) == pytest.approx(1.0, abs=1e-7)


def test_passing_models_pass_the_protocol():
    spec = qc.universal_spec()
    for model in (qc.target_universal_model(), t_variant(gates.ZT),
                  conjugated_model(),
                  qc.rotate_model(qc.target_universal_model(), gates.X)):
        report = qc.verify_universal(model)
        assert report.verdict == "pass"
        assert report.t_branch in ("T", "ZT")
        assert qc.pass_probability(model, spec) >= 1.0 - 12e-7


def test_eighth_turn_t_fails_on_the_naming_sequence():
    report = qc.verify_universal(t_variant(np.diag([1.0, np.exp(1j * np.pi / 8)])))
    assert report.verdict == "fail"
    assert report.t_branch == "undetermined"
    assert any("tts" in name for name in report.failing_checks)
    # |<-|S T' T'|+>|^2 = 1/2 + sqrt(2)/4
    tts = [name for name, ok in report.checks if "tts" in name]
    assert "0.853553391" in tts[0]


def test_depolarized_hadamard_fails_determinism():
    base = qc.target_universal_model()
    channels = dict(base.channels)
    channels[GateLabel.H] = qc.compose(channels[GateLabel.H],
                                       qc.depolarizing_channel(0.05))
    report = qc.verify_universal(QuantumModel(base.state, channels, base.povm))
    assert report.verdict == "fail"
    assert any("hh" in name or "hsh" in name or "hth" in name
               for name in report.failing_checks)


def test_wrong_hadamard_axis_fails_branch_resolution():
    # exp(i pi/2 Y) maps the frame correctly only up to phases that the
    # twelve sequences reject
    base = qc.target_universal_model()
    channels = dict(base.channels)
    channels[GateLabel.H] = qc.choi_of_unitary(qc.su2_rotation((0, 1, 0),
                                                               np.pi / 2))
    report = qc.verify_universal(QuantumModel(base.state, channels, base.povm))
    assert report.verdict == "fail"


def test_two_admissible_hadamard_phases():
    # determinism of the twelve sequences pins |1 + 2e^{i theta} - e^{2i theta}|
    # to 2*sqrt(2), which happens only at theta = +/- pi/2 on a fine grid
    theta = np.arange(-np.pi, np.pi, 1e-3)
    vals = np.abs(1.0 + 2.0 * np.exp(1j * theta) - np.exp(2j * theta))
    hits = theta[np.abs(vals - 2.0 * np.sqrt(2.0)) < 1e-6]
    assert hits.size > 0
    assert np.all(np.minimum(np.abs(hits - np.pi / 2),
                             np.abs(hits + np.pi / 2)) < 1e-3)
