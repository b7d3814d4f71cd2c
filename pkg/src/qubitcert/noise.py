"""Random noisy models and standard noise channels.

Unitary noise perturbs each model component with an independent rotation
exp(alpha * u), where u is a traceless anti-Hermitian matrix with Gaussian
Pauli coefficients normalized to unit norm and alpha is uniform on a
configured range.  Depolarizing and amplitude-damping noise act as a fixed
channel composed after each ideal gate, applied to the prepared state, and
pulled through the measurement by the adjoint, which keeps the two-outcome
measurement valid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, gates, rng
from .core import ChoiChannel, GateLabel, Povm, QuantumModel, QubitState
from .errors import ValidationError

KINDS = ("unitary", "depolarizing", "amplitude-damping")

_PAULIS = (gates.X, gates.Y, gates.Z)


@dataclass(frozen=True)
class NoiseConfig:
    """What to perturb and how strongly; seed fixes the whole ensemble.

    alpha_range defaults to (0, 1) for the unitary kind and to (0, 0) for
    the channel kinds, where the noise is the fixed channel alone; it can be
    set explicitly to combine both mechanisms.
    """

    kind: str = "unitary"
    alpha_range: tuple[float, float] | None = None
    p: float = 0.0
    gamma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.alpha_range is not None:
            lo, hi = (float(x) for x in self.alpha_range)
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValidationError("alpha_range must satisfy 0 <= lo <= hi <= 1")
            object.__setattr__(self, "alpha_range", (lo, hi))
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError("p must lie in [0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValidationError("gamma must lie in [0, 1]")

    def resolved_alpha_range(self) -> tuple[float, float]:
        if self.alpha_range is not None:
            return self.alpha_range
        return (0.0, 1.0) if self.kind == "unitary" else (0.0, 0.0)


def su2_rotation(axis, angle: float) -> np.ndarray:
    """exp(i * angle * (axis . pauli)) in closed form; axis is normalized first."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,):
        raise ValidationError("axis must have 3 components")
    norm = np.linalg.norm(n)
    if norm < 1e-12:
        raise ValidationError("axis must be nonzero")
    n = n / norm
    generator = n[0] * gates.X + n[1] * gates.Y + n[2] * gates.Z
    return np.cos(angle) * gates.I2 + 1j * np.sin(angle) * generator


def random_su2_unitary(generator: np.random.Generator,
                       alpha_range: tuple[float, float] = (0.0, 1.0)) -> np.ndarray:
    """exp(alpha * u) with a Gaussian-direction unit-norm generator u.

    The three Pauli coefficients are standard normal, so the rotation axis
    is uniform on the sphere; alpha is uniform on alpha_range.
    """
    while True:
        coeffs = generator.standard_normal(3)
        if np.linalg.norm(coeffs) > 1e-12:
            break
    lo, hi = alpha_range
    alpha = lo + (hi - lo) * generator.random()
    return su2_rotation(coeffs, alpha)


def _choi_from_kraus(ops) -> np.ndarray:
    c = np.zeros((4, 4), dtype=complex)
    for k in ops:
        v = np.asarray(k, dtype=complex).ravel() / np.sqrt(2.0)
        c += np.outer(v, v.conj())
    return c


def depolarizing_channel(p: float) -> ChoiChannel:
    """rho -> (1 - p) rho + p * tr(rho) * I/2; p = 1 is fully depolarizing."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError("p must lie in [0, 1]")
    identity = core._choi_of_unitary_raw(gates.I2)
    return ChoiChannel((1.0 - p) * identity + p * np.eye(4) / 4.0)


def amplitude_damping_channel(gamma: float) -> ChoiChannel:
    """Decay toward |0><0| with excited-state population loss gamma."""
    if not 0.0 <= gamma <= 1.0:
        raise ValidationError("gamma must lie in [0, 1]")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return ChoiChannel(_choi_from_kraus((k0, k1)))


def _noise_choi(cfg: NoiseConfig) -> np.ndarray | None:
    if cfg.kind == "depolarizing":
        return depolarizing_channel(cfg.p).choi
    if cfg.kind == "amplitude-damping":
        return amplitude_damping_channel(cfg.gamma).choi
    return None


def random_noisy_model(cfg: NoiseConfig, index: int = 0) -> QuantumModel:
    """Noisy version of the target s-gate model, deterministic per (seed, index).

    Four independent rotations perturb the state, the two gates (rotation
    after the ideal gate), and the plus effect.  With a channel noise kind,
    the fixed noise channel is additionally composed after each gate,
    applied to the state, and adjoint-applied to the plus effect.
    Generation across indices is safe to parallelize.
    """
    generator = rng.substream(cfg.seed, rng.DOMAIN_MODELS, index)
    alpha_range = cfg.resolved_alpha_range()
    u1, u2, u3, u4 = (random_su2_unitary(generator, alpha_range) for _ in range(4))

    state = u1 @ gates.PROJ_PLUS @ u1.conj().T
    choi_s = core._choi_of_unitary_raw(u2 @ gates.S)
    choi_sinv = core._choi_of_unitary_raw(u3 @ gates.S_DAG)
    m_plus = u4 @ gates.PROJ_PLUS @ u4.conj().T

    extra = _noise_choi(cfg)
    if extra is not None:
        state = core._apply_choi(extra, state)
        choi_s = core._compose_choi(choi_s, extra)
        choi_sinv = core._compose_choi(choi_sinv, extra)
        m_plus = core._adjoint_choi(extra, m_plus)

    return QuantumModel(
        state=QubitState(state),
        channels={
            GateLabel.S: ChoiChannel(choi_s),
            GateLabel.S_INV: ChoiChannel(choi_sinv),
        },
        povm=Povm(m_plus, gates.I2 - m_plus),
    )
