"""Single-qubit states, channels, and measurements.

Channels are held as 4x4 Choi matrices normalized to unit trace,

    choi = (1/2) * sum_ij channel(|i><j|) (x) |i><j|,

with tensor factor order (output (x) input) and basis order
|00>, |01>, |10>, |11>.  Under this convention a channel is completely
positive iff its Choi matrix is positive semidefinite, and trace preserving
iff the partial trace over the output factor equals I/2.  Channel and
adjoint application reduce to single tensor contractions:

    channel(rho)    = 2 * Tr_in[(I (x) rho^T) choi]
    adjoint(effect) = 2 * (Tr_out[(effect (x) I) choi])^T

Constructors only check shapes; numerical invariants are reported by
``validate`` so that defective models can still be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np

from . import gates
from .errors import ValidationError

# structural checks use this tolerance; algebraic identities hold to 1e-12
VALIDATION_TOL = 1e-9


class GateLabel(str, Enum):
    """Gate alphabet; the member value is the serialized letter ("S" = inverse of s)."""

    S = "s"
    S_INV = "S"
    H = "h"
    T = "t"


def _matrix(values, dim: int, name: str) -> np.ndarray:
    m = np.asarray(values, dtype=complex)
    if m.shape != (dim, dim):
        raise ValidationError(f"{name} must be {dim}x{dim}, got shape {m.shape}")
    return m


def _freeze(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class QubitState:
    """2x2 density matrix."""

    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", _freeze(_matrix(self.mat, 2, "state")))


@dataclass(frozen=True)
class ChoiChannel:
    """4x4 Choi matrix of a qubit channel."""

    choi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "choi", _freeze(_matrix(self.choi, 4, "choi")))


@dataclass(frozen=True)
class Povm:
    """Two-outcome measurement {m_plus, m_minus}."""

    m_plus: np.ndarray
    m_minus: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "m_plus", _freeze(_matrix(self.m_plus, 2, "m_plus")))
        object.__setattr__(self, "m_minus", _freeze(_matrix(self.m_minus, 2, "m_minus")))


@dataclass(frozen=True)
class QuantumModel:
    """Preparation, labeled channels, and a two-outcome measurement."""

    state: QubitState
    channels: Mapping[GateLabel, ChoiChannel]
    povm: Povm

    def __post_init__(self):
        chans = {GateLabel(k): v for k, v in self.channels.items()}
        for v in chans.values():
            if not isinstance(v, ChoiChannel):
                raise ValidationError("channels must map labels to ChoiChannel")
        object.__setattr__(self, "channels", chans)


# ---------------------------------------------------------------------------
# raw array helpers; no validation, used on hot paths

_OMEGA = gates._frozen(np.array([1, 0, 0, 1]) / np.sqrt(2))  # (|00> + |11>)/sqrt(2)


def _apply_choi(choi: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return 2.0 * np.einsum("aibj,ij->ab", choi.reshape(2, 2, 2, 2), rho)


def _adjoint_choi(choi: np.ndarray, effect: np.ndarray) -> np.ndarray:
    return 2.0 * np.einsum("ac,cjai->ij", effect, choi.reshape(2, 2, 2, 2))


def _compose_choi(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    c = np.einsum("acbd,cidj->aibj", second.reshape(2, 2, 2, 2), first.reshape(2, 2, 2, 2))
    return 2.0 * c.reshape(4, 4)


def _choi_of_unitary_raw(u: np.ndarray) -> np.ndarray:
    # (u (x) I)|omega> has component u[a, i]/sqrt(2) at basis index (a, i)
    v = u.ravel() / np.sqrt(2.0)
    return np.outer(v, v.conj())


def _ptrace_output(choi: np.ndarray) -> np.ndarray:
    return np.einsum("aiaj->ij", choi.reshape(2, 2, 2, 2))


def _phase_fix(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if pivot == 0:
        return v
    return v * (pivot.conjugate() / abs(pivot))


def eig2_hermitian(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a 2x2 Hermitian matrix, eigenvalues descending.

    Closed form from trace and determinant.  Column k of the returned matrix
    is the eigenvector for eigenvalue k, with its largest-magnitude entry
    made real positive, so the output is deterministic given the input.
    """
    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    half_tr = 0.5 * (a + d)
    r = np.hypot(0.5 * (a - d), abs(b))
    w = np.array([half_tr + r, half_tr - r])
    scale = max(abs(a), abs(d), abs(b), 1.0)
    if abs(b) <= 1e-15 * scale:
        order = (0, 1) if a >= d else (1, 0)
        v = np.zeros((2, 2), dtype=complex)
        v[order[0], 0] = 1.0
        v[order[1], 1] = 1.0
        return w, v
    cols = []
    for lam in w:
        c1 = np.array([b, lam - a], dtype=complex)
        c2 = np.array([lam - d, b.conjugate()], dtype=complex)
        vec = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
        cols.append(_phase_fix(vec / np.linalg.norm(vec)))
    return w, np.column_stack(cols)


def _min_eig2(h: np.ndarray) -> float:
    a = h[0, 0].real
    d = h[1, 1].real
    return 0.5 * (a + d) - np.hypot(0.5 * (a - d), abs(h[0, 1]))


def _require_hermitian(m: np.ndarray, name: str) -> None:
    if np.max(np.abs(m - m.conj().T)) > VALIDATION_TOL:
        raise ValidationError(f"{name} is not Hermitian")


def _require_state(rho: QubitState) -> None:
    m = rho.mat
    _require_hermitian(m, "state")
    if abs(np.trace(m).real - 1.0) > VALIDATION_TOL:
        raise ValidationError("state trace is not 1")
    if _min_eig2(m) < -VALIDATION_TOL:
        raise ValidationError("state is not positive semidefinite")


def _require_channel(ch: ChoiChannel) -> None:
    c = ch.choi
    _require_hermitian(c, "choi")
    if np.max(np.abs(_ptrace_output(c) - gates.I2 / 2)) > VALIDATION_TOL:
        raise ValidationError("choi is not trace preserving")
    if np.linalg.eigvalsh(c)[0] < -VALIDATION_TOL:
        raise ValidationError("choi is not positive semidefinite")


# ---------------------------------------------------------------------------
# operations


def state_from_ket(amplitudes) -> QubitState:
    """Rank-1 density matrix from a ket; the ket is normalized first."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.shape != (2,):
        raise ValidationError(f"ket must have 2 amplitudes, got {v.shape}")
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise ValidationError("degenerate ket")
    v = v / n
    return QubitState(np.outer(v, v.conj()))


def choi_of_unitary(u) -> ChoiChannel:
    """Choi matrix of rho -> u rho u^dag."""
    m = _matrix(u, 2, "unitary")
    if np.max(np.abs(m.conj().T @ m - gates.I2)) > VALIDATION_TOL:
        raise ValidationError("not unitary")
    return ChoiChannel(_choi_of_unitary_raw(m))


def apply_channel(ch: ChoiChannel, rho: QubitState) -> QubitState:
    """Act on a state: rho -> 2 * Tr_in[(I (x) rho^T) choi]."""
    _require_channel(ch)
    _require_state(rho)
    return QubitState(_apply_choi(ch.choi, rho.mat))


def adjoint_apply(ch: ChoiChannel, effect) -> np.ndarray:
    """Heisenberg picture: pull a measurement effect back through the channel.

    The adjoint of a trace-preserving channel is unital, so the identity
    effect is a fixed point.
    """
    _require_channel(ch)
    e = _matrix(effect, 2, "effect")
    _require_hermitian(e, "effect")
    return _adjoint_choi(ch.choi, e)


def compose(first: ChoiChannel, second: ChoiChannel) -> ChoiChannel:
    """Choi matrix of (second after first)."""
    _require_channel(first)
    _require_channel(second)
    return ChoiChannel(_compose_choi(first.choi, second.choi))


def entanglement_fidelity(ch: ChoiChannel, target_unitary) -> float:
    """Choi overlap Tr[choi(ch) choi(target)] with a target unitary."""
    _require_channel(ch)
    target = choi_of_unitary(target_unitary)
    return float(np.trace(ch.choi @ target.choi).real)


def avg_gate_fidelity(ch: ChoiChannel, target_unitary) -> float:
    """Average fidelity (2 * entanglement_fidelity + 1) / 3, in [1/3, 1]."""
    return (2.0 * entanglement_fidelity(ch, target_unitary) + 1.0) / 3.0


def diamond_bound(favg: float) -> float:
    """Upper bound 2*sqrt(6)*sqrt(1 - favg) on the diamond distance to the target."""
    f = float(favg)
    # a hair of float slop at both ends, then clamp
    if f < -1e-12 or f > 1.0 + 1e-12:
        raise ValidationError(f"favg must lie in [0, 1], got {favg}")
    gap = min(max(1.0 - f, 0.0), 1.0)
    return float(2.0 * np.sqrt(6.0) * np.sqrt(gap))


@dataclass(frozen=True)
class Violation:
    """One failed numerical invariant, with the size of the violation."""

    component: str
    check: str
    magnitude: float


def _check(out: list[Violation], component: str, check: str, magnitude: float) -> None:
    if magnitude > VALIDATION_TOL:
        out.append(Violation(component, check, float(magnitude)))


def validate(model: QuantumModel) -> list[Violation]:
    """Diagnose every violated model invariant; an empty list means valid.

    Checks hermiticity, unit trace, and positivity of the state; hermiticity,
    unit trace, positivity, and trace preservation of each channel; and
    hermiticity, positivity, and completeness of the measurement pair.
    """
    out: list[Violation] = []
    s = model.state.mat
    _check(out, "state", "hermitian", np.max(np.abs(s - s.conj().T)))
    _check(out, "state", "trace", abs(np.trace(s).real - 1.0))
    _check(out, "state", "psd", max(0.0, -_min_eig2(s)))
    for label, ch in model.channels.items():
        name = f"channel[{label.value}]"
        c = ch.choi
        _check(out, name, "hermitian", np.max(np.abs(c - c.conj().T)))
        _check(out, name, "trace", abs(np.trace(c).real - 1.0))
        _check(out, name, "psd", max(0.0, -np.linalg.eigvalsh(c)[0].real))
        _check(out, name, "trace_preservation",
               np.max(np.abs(_ptrace_output(c) - gates.I2 / 2)))
    for name, e in (("povm.m_plus", model.povm.m_plus), ("povm.m_minus", model.povm.m_minus)):
        _check(out, name, "hermitian", np.max(np.abs(e - e.conj().T)))
        _check(out, name, "psd", max(0.0, -_min_eig2(e)))
    _check(out, "povm", "completeness",
           np.max(np.abs(model.povm.m_plus + model.povm.m_minus - gates.I2)))
    return out


# ---------------------------------------------------------------------------
# reference models


def target_s_gate_model() -> QuantumModel:
    """|+><+| preparation, exact s and s^-1 channels, {|+><+|, |-><-|} measurement."""
    return QuantumModel(
        state=QubitState(gates.PROJ_PLUS),
        channels={
            GateLabel.S: choi_of_unitary(gates.S),
            GateLabel.S_INV: choi_of_unitary(gates.S_DAG),
        },
        povm=Povm(gates.PROJ_PLUS, gates.PROJ_MINUS),
    )


def target_universal_model() -> QuantumModel:
    """The s-gate target extended with exact h and t channels."""
    base = target_s_gate_model()
    channels = dict(base.channels)
    channels[GateLabel.H] = choi_of_unitary(gates.H)
    channels[GateLabel.T] = choi_of_unitary(gates.T)
    return QuantumModel(state=base.state, channels=channels, povm=base.povm)


def rotate_model(model: QuantumModel, u) -> QuantumModel:
    """Conjugate every component of a model by one unitary.

    The state and effects transform as m -> u m u^dag; a channel's Choi
    matrix transforms by (u (x) conj(u)) on both sides.
    """
    v = _matrix(u, 2, "unitary")
    if np.max(np.abs(v.conj().T @ v - gates.I2)) > VALIDATION_TOL:
        raise ValidationError("not unitary")
    big = np.kron(v, v.conj())
    return QuantumModel(
        state=QubitState(v @ model.state.mat @ v.conj().T),
        channels={
            label: ChoiChannel(big @ ch.choi @ big.conj().T)
            for label, ch in model.channels.items()
        },
        povm=Povm(
            v @ model.povm.m_plus @ v.conj().T,
            v @ model.povm.m_minus @ v.conj().T,
        ),
    )
