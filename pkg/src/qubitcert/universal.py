"""Exact-regime verification of the gate set {s, s^-1, h, t}.

When every sequence of the twelve-sequence test is deterministic, the
model is related to exactly one of a small family of targets: the gauge
unitary from the s-gate frames aligns the s pair, the h channel either
matches H directly or matches XHX, in which case the X is absorbed into
the gauge and the whole model is recognized as entrywise conjugated, and
the t channel's remaining phase satisfies exp(2 i phase) = i, whose two
square roots distinguish the T branch (Re > 0) from the ZT branch (Re < 0).

The verifier runs an ordered check table; the verdict is pass only when
every check holds.  Stages that depend on earlier failures are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import core, gates, protocol, selftest
from .core import ChoiChannel, GateLabel, QuantumModel
from .errors import DegenerateModelError

DEFAULT_TOL = 1e-7
_PURITY_TOL = 1e-9
# certified distances are a constant factor above the sequence tolerance
_DISTANCE_FACTOR = 100.0


@dataclass(frozen=True)
class UniversalReport:
    verdict: str  # "pass" | "fail"
    checks: tuple[tuple[str, bool], ...]
    conjugated: bool
    t_branch: str  # "T" | "ZT" | "undetermined"
    gauge: np.ndarray | None = None
    extracted: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "checks",
                           tuple((name, bool(ok)) for name, ok in self.checks))

    @property
    def failing_checks(self) -> tuple[str, ...]:
        return tuple(name for name, ok in self.checks if not ok)


def extract_unitary(ch: ChoiChannel, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Recover the unitary of a channel from its Choi matrix, or None.

    A channel is unitary iff its Choi matrix is rank one; then the top
    eigenvector reshapes to U / sqrt(2).  Returns None when the top
    eigenvalue falls below 1 - tol.  Roundoff is scrubbed by projecting to
    the nearest unitary, and the global phase makes the largest entry real
    positive.
    """
    w, v = np.linalg.eigh(ch.choi)
    if w[-1] < 1.0 - tol:
        return None
    m = np.sqrt(2.0) * v[:, -1].reshape(2, 2)
    left, _, right = np.linalg.svd(m)
    u = left @ right
    return core._phase_fix(u.ravel()).reshape(2, 2)


def check_purity_after_double(ch: ChoiChannel, psi) -> bool:
    """True when applying the channel twice to |psi><psi| yields a pure state."""
    v = np.asarray(psi, dtype=complex).reshape(2)
    v = v / np.linalg.norm(v)
    rho = np.outer(v, v.conj())
    sigma = core._apply_choi(ch.choi, core._apply_choi(ch.choi, rho))
    return bool(np.trace(sigma @ sigma).real >= 1.0 - _PURITY_TOL)


def _unitary_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """|tr(a^dag b)| / 2; equals 1 iff the unitaries agree up to a global phase."""
    return float(abs(np.trace(a.conj().T @ b)) / 2.0)


def _fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    return float(np.trace(rho @ sigma).real)


def verify_universal(model: QuantumModel, tol: float = DEFAULT_TOL) -> UniversalReport:
    """Run the full check table against a four-gate model.

    Stage 1 requires all twelve sequences to be deterministic within tol.
    Stage 2 certifies the s pair in the extracted gauge.  Stage 3 extracts
    the four unitaries, confirms the structural relations, and resolves the
    Hadamard branch (absorbing an X into the gauge flags the model as
    conjugated).  Stage 4 resolves the t phase and classifies the branch.
    """
    spec = protocol.universal_spec()
    checks: list[tuple[str, bool]] = []
    branch_tol = np.sqrt(tol)

    probs = protocol.sequence_success_probabilities(model, spec)
    stage1_ok = True
    for seq, prob in zip(spec.sequences, probs):
        name = protocol.format_sequence(seq) or "empty"
        ok = bool(prob >= 1.0 - tol)
        checks.append((f"sequence {name} deterministic (success {prob:.9f})", ok))
        stage1_ok = stage1_ok and ok
    if not stage1_ok:
        return UniversalReport("fail", tuple(checks), False, "undetermined")

    try:
        frames = selftest.extract_frames(model)
    except DegenerateModelError as exc:
        checks.append((f"frame extraction ({exc})", False))
        return UniversalReport("fail", tuple(checks), False, "undetermined")
    gauge = selftest.gauge_unitary(frames)
    sub = QuantumModel(
        state=model.state,
        channels={GateLabel.S: model.channels[GateLabel.S],
                  GateLabel.S_INV: model.channels[GateLabel.S_INV]},
        povm=model.povm,
    )
    report = selftest.certify(sub)
    checks.append(("s pair certified in gauge "
                   f"(distance {report.model_distance:.3e})",
                   report.model_distance <= _DISTANCE_FACTOR * tol))

    extracted: dict[GateLabel, np.ndarray] = {}
    for label in (GateLabel.S, GateLabel.S_INV, GateLabel.H, GateLabel.T):
        u = extract_unitary(model.channels[label], tol)
        checks.append((f"channel {label.value} unitary", u is not None))
        if u is not None:
            extracted[label] = u
    if any(not ok for _, ok in checks):
        return UniversalReport("fail", tuple(checks), False, "undetermined",
                               None, extracted)

    u_s = extracted[GateLabel.S]
    u_sinv = extracted[GateLabel.S_INV]
    u_h = extracted[GateLabel.H]
    u_t = extracted[GateLabel.T]
    choi_h = model.channels[GateLabel.H].choi
    choi_t = model.channels[GateLabel.T].choi

    checks.append(("s and s^-1 mutually inverse",
                   _unitary_overlap(u_s.conj().T, u_sinv) >= 1.0 - branch_tol))

    phi_proj = np.outer(frames.phi, frames.phi.conj())
    phi_perp_proj = np.outer(frames.phi_perp, frames.phi_perp.conj())
    checks.append(("h exchanges the channel frame (phi -> phi_perp)",
                   _fidelity(core._apply_choi(choi_h, phi_proj), phi_perp_proj)
                   >= 1.0 - tol))
    checks.append(("h exchanges the channel frame (phi_perp -> phi)",
                   _fidelity(core._apply_choi(choi_h, phi_perp_proj), phi_proj)
                   >= 1.0 - tol))
    checks.append(("hh returns a pure state",
                   check_purity_after_double(model.channels[GateLabel.H], frames.psi)))
    psi_proj = np.outer(frames.psi, frames.psi.conj())
    hh_back = core._apply_choi(choi_h, core._apply_choi(choi_h, psi_proj))
    checks.append(("hh acts as the identity on psi",
                   _fidelity(hh_back, psi_proj) >= 1.0 - tol))
    checks.append(("hsh word deterministic on psi",
                   abs(np.vdot(frames.psi, u_h @ u_s @ u_h @ frames.psi))
                   >= 1.0 - tol))

    conjugated = False
    w_h = gauge.conj().T @ u_h @ gauge
    if _unitary_overlap(w_h, gates.H) >= 1.0 - branch_tol:
        checks.append(("h matches H in gauge", True))
    elif _unitary_overlap(w_h, gates.X @ gates.H @ gates.X) >= 1.0 - branch_tol:
        # absorb the X into the gauge; the model is entrywise conjugated
        checks.append(("h matches XHX in gauge, X absorbed", True))
        conjugated = True
        gauge = gauge @ gates.X
    else:
        checks.append(("h branch resolved", False))
        return UniversalReport("fail", tuple(checks), False, "undetermined",
                               gauge, extracted)

    checks.append(("tt returns a pure state",
                   check_purity_after_double(model.channels[GateLabel.T], frames.psi)))
    chi = u_h @ frames.psi
    chi_proj = np.outer(chi, chi.conj())
    checks.append(("t fixes the h image of psi",
                   _fidelity(core._apply_choi(choi_t, chi_proj), chi_proj)
                   >= 1.0 - tol))

    w_t = gauge.conj().T @ u_t @ gauge
    if conjugated:
        w_t = w_t.conj()
    t_branch = "undetermined"
    diag_ok = min(abs(w_t[0, 0]), abs(w_t[1, 1])) >= 0.9
    checks.append(("t diagonal in gauge", bool(diag_ok)))
    if diag_ok:
        phase = (w_t[1, 1] * w_t[0, 0].conjugate())
        phase = phase / abs(phase)
        phase_ok = abs(phase * phase - 1j) <= branch_tol
        checks.append(("t phase squares to i", bool(phase_ok)))
        if phase_ok:
            candidate = gates.T if phase.real > 0.0 else gates.ZT
            residual_ok = _unitary_overlap(w_t, candidate) >= 1.0 - branch_tol
            checks.append((f"t matches branch {'T' if phase.real > 0 else 'ZT'}",
                           bool(residual_ok)))
            if residual_ok:
                t_branch = "T" if phase.real > 0.0 else "ZT"

    verdict = "pass" if all(ok for _, ok in checks) and t_branch != "undetermined" \
        else "fail"
    return UniversalReport(verdict, tuple(checks), conjugated, t_branch,
                           gauge, extracted)
