"""Gauge extraction and certification for the s-gate model.

The dominant eigenvector of the plus effect defines the frame
{psi, psi_perp}; the eigenvectors of

    delta = adjoint_s(psi) - adjoint_s_inv(psi)

define the frame {phi, phi_perp}.  Relative phases are fixed so that
<psi|phi> and <psi_perp|phi> are real positive while <psi|phi_perp> is
real negative, which determines all four kets up to one shared global
phase.  The gauge unitary

    U = |psi><+| - i |psi_perp><-|

maps the reference frame onto the extracted one, and every scalar in the
certification report is invariant under simultaneous conjugation of the
model by a unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, gates, protocol
from .core import GateLabel, QuantumModel
from .errors import DegenerateModelError, ValidationError

# below this the relative phases are numerically undefined
OVERLAP_FLOOR = 1e-6
_EFFECT_GAP_FLOOR = 1e-6
_PHASE_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class Frames:
    """Measurement and channel frames with their spectral weights.

    m_plus = (1 - lambda_plus) |psi><psi| + lambda_minus |psi_perp><psi_perp|
    delta  = eta_plus |phi><phi| - eta_minus |phi_perp><phi_perp|
    """

    psi: np.ndarray
    psi_perp: np.ndarray
    phi: np.ndarray
    phi_perp: np.ndarray
    lambda_plus: float
    lambda_minus: float
    eta_plus: float
    eta_minus: float


@dataclass(frozen=True)
class GaugeReport:
    gauge: np.ndarray
    favg_s: float
    favg_sinv: float
    state_fidelity: float
    meas_spectral_distance: float
    model_distance: float
    epsilon_fail: float


def _rephase(v: np.ndarray, overlap: complex, want_positive: bool, what: str) -> np.ndarray:
    if abs(overlap) < OVERLAP_FLOOR:
        raise DegenerateModelError(f"degenerate frame overlap: |<{what}>| ~ 0")
    phase = overlap / abs(overlap)
    return v * phase if want_positive else v * (-phase)


def extract_frames(model: QuantumModel) -> Frames:
    """Extract both frames and their weights from an s-gate model.

    Raises DegenerateModelError when the plus effect has a (near) degenerate
    spectrum or when a frame overlap vanishes, since the phase convention is
    undefined there.
    """
    for label in (GateLabel.S, GateLabel.S_INV):
        if label not in model.channels:
            raise ValidationError(f"model has no channel for label {label.value!r}")
    w, v = core.eig2_hermitian(model.povm.m_plus)
    if w[0] - w[1] < _EFFECT_GAP_FLOOR:
        raise DegenerateModelError(
            "gauge-undefined measurement: plus effect spectrum is degenerate")
    psi = v[:, 0]
    lambda_plus = 1.0 - w[0]
    lambda_minus = w[1]

    psi_proj = np.outer(psi, psi.conj())
    delta = (core._adjoint_choi(model.channels[GateLabel.S].choi, psi_proj)
             - core._adjoint_choi(model.channels[GateLabel.S_INV].choi, psi_proj))
    delta = 0.5 * (delta + delta.conj().T)  # scrub contraction roundoff
    dw, dv = core.eig2_hermitian(delta)
    eta_plus = float(dw[0])
    eta_minus = float(-dw[1])

    # phase convention: <psi|phi> > 0, <psi_perp|phi> > 0, <psi|phi_perp> < 0
    phi = _rephase(dv[:, 0], np.vdot(psi, dv[:, 0]).conjugate(), True, "psi|phi")
    psi_perp = _rephase(v[:, 1], np.vdot(v[:, 1], phi), True, "psi_perp|phi")
    phi_perp = _rephase(dv[:, 1], np.vdot(psi, dv[:, 1]).conjugate(), False, "psi|phi_perp")

    for bra, ket, what in (
        (psi, phi, "psi|phi"),
        (psi_perp, phi, "psi_perp|phi"),
        (psi, phi_perp, "psi|phi_perp"),
        (psi_perp, phi_perp, "psi_perp|phi_perp"),
    ):
        if abs(np.vdot(bra, ket).imag) > _PHASE_IMAG_TOL:
            raise ValidationError(f"phase convention failed: Im<{what}> too large")

    return Frames(psi, psi_perp, phi, phi_perp,
                  float(lambda_plus), float(lambda_minus), eta_plus, eta_minus)


def gauge_unitary(frames: Frames) -> np.ndarray:
    """U = |psi><+| - i |psi_perp><-|; unitary because the frame is orthonormal."""
    return (np.outer(frames.psi, gates.KET_PLUS.conj())
            - 1j * np.outer(frames.psi_perp, gates.KET_MINUS.conj()))


def certify(model: QuantumModel, spec: protocol.ProtocolSpec | None = None) -> GaugeReport:
    """Certify an s-gate model against the target in the extracted gauge.

    model_distance is the worst of the two gate infidelities, the state
    infidelity, and the spectral distance of the plus effect from the
    gauge-aligned projector; epsilon_fail is the single-repetition failure
    probability of the sequence test.
    """
    if spec is None:
        spec = protocol.s_gate_spec()
    allowed = {GateLabel.S, GateLabel.S_INV}
    if any(label not in allowed for seq in spec.sequences for label in seq):
        raise ValidationError("certification spec may only use labels 's' and 'S'")
    frames = extract_frames(model)
    u = gauge_unitary(frames)
    favg_s = core.avg_gate_fidelity(
        model.channels[GateLabel.S], u @ gates.S @ u.conj().T)
    favg_sinv = core.avg_gate_fidelity(
        model.channels[GateLabel.S_INV], u @ gates.S_DAG @ u.conj().T)
    # U|+> = psi by construction, so the aligned preparation is |psi><psi|
    state_fidelity = float(np.vdot(frames.psi, model.state.mat @ frames.psi).real)
    meas = max(frames.lambda_plus, frames.lambda_minus)
    model_distance = max(1.0 - favg_s, 1.0 - favg_sinv, 1.0 - state_fidelity, meas)
    epsilon_fail = 1.0 - protocol.pass_probability(model, spec)
    return GaugeReport(
        gauge=u,
        favg_s=favg_s,
        favg_sinv=favg_sinv,
        state_fidelity=state_fidelity,
        meas_spectral_distance=meas,
        model_distance=float(model_distance),
        epsilon_fail=float(epsilon_fail),
    )
