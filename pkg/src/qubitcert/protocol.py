"""Sequence tests: specifications, exact pass probabilities, sampled runs.

A specification lists gate sequences, the outcome each must produce, and
the probability mass with which each is drawn.  Sequences act left to
right: the first label is applied first.  A run draws one sequence per
repetition and rejects at the first wrong outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import core, rng
from .core import GateLabel, QuantumModel
from .errors import ValidationError

Sequence = tuple[GateLabel, ...]

OUTCOME_PLUS = "+"
OUTCOME_MINUS = "-"


def parse_sequence(text: str) -> Sequence:
    """Gate string over {s, S, h, t}; "" is the empty sequence."""
    try:
        return tuple(GateLabel(c) for c in text)
    except ValueError as exc:
        raise ValidationError(f"unknown gate letter in {text!r}") from exc


def format_sequence(seq: Sequence) -> str:
    return "".join(label.value for label in seq)


@dataclass(frozen=True)
class ProtocolSpec:
    """Finite sequence set with expected outcomes and sampling masses."""

    sequences: tuple[Sequence, ...]
    outcomes: Mapping[Sequence, str]
    mu: tuple[float, ...]

    def __post_init__(self):
        seqs = tuple(tuple(GateLabel(x) for x in s) for s in self.sequences)
        if len(set(seqs)) != len(seqs):
            raise ValidationError("duplicate sequences")
        outcomes = {tuple(GateLabel(x) for x in k): v for k, v in self.outcomes.items()}
        mu = tuple(float(x) for x in self.mu)
        if len(mu) != len(seqs):
            raise ValidationError("mu must have one mass per sequence")
        if any(not x > 0.0 for x in mu):
            raise ValidationError("every sequence mass must be positive")
        if abs(sum(mu) - 1.0) > 1e-12:
            raise ValidationError("sequence masses must sum to 1")
        for s in seqs:
            if outcomes.get(s) not in (OUTCOME_PLUS, OUTCOME_MINUS):
                raise ValidationError(
                    f"sequence {format_sequence(s)!r} needs an outcome '+' or '-'")
        object.__setattr__(self, "sequences", seqs)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "mu", mu)


def _uniform_spec(plus: tuple[str, ...], minus: tuple[str, ...]) -> ProtocolSpec:
    texts = plus + minus
    outcomes = {t: OUTCOME_PLUS for t in plus}
    outcomes.update({t: OUTCOME_MINUS for t in minus})
    n = len(texts)
    return ProtocolSpec(
        sequences=tuple(parse_sequence(t) for t in texts),
        outcomes={parse_sequence(t): o for t, o in outcomes.items()},
        mu=tuple(1.0 / n for _ in texts),
    )


def s_gate_spec() -> ProtocolSpec:
    """Five-sequence test for the s gate pair, uniform masses.

    The identity-equivalent words keep the outcome, the words equal to
    s^2 = Z flip it.
    """
    return ProtocolSpec(
        sequences=tuple(parse_sequence(t) for t in ("", "ss", "sS", "Ss", "SS")),
        outcomes={
            parse_sequence(""): OUTCOME_PLUS,
            parse_sequence("ss"): OUTCOME_MINUS,
            parse_sequence("sS"): OUTCOME_PLUS,
            parse_sequence("Ss"): OUTCOME_PLUS,
            parse_sequence("SS"): OUTCOME_MINUS,
        },
        mu=(0.2, 0.2, 0.2, 0.2, 0.2),
    )


def universal_spec() -> ProtocolSpec:
    """Twelve-sequence test for the gate set {s, s^-1, h, t}, uniform masses."""
    return _uniform_spec(
        plus=("", "sS", "Ss", "shs", "hh", "hsh", "hth"),
        minus=("ss", "SS", "Shs", "sshth", "tts"),
    )


def _require_labels(model: QuantumModel, spec: ProtocolSpec) -> None:
    used = {label for seq in spec.sequences for label in seq}
    missing = sorted(label.value for label in used if label not in model.channels)
    if missing:
        raise ValidationError(f"model has no channel for labels {missing}")


def _p_plus_per_sequence(model: QuantumModel, spec: ProtocolSpec) -> np.ndarray:
    """Exact probability of the '+' outcome for each sequence, clamped to [0, 1]."""
    _require_labels(model, spec)
    chois = {label: ch.choi for label, ch in model.channels.items()}
    m_plus = model.povm.m_plus
    out = np.empty(len(spec.sequences))
    for k, seq in enumerate(spec.sequences):
        sigma = model.state.mat
        for label in seq:
            sigma = core._apply_choi(chois[label], sigma)
        p = np.trace(m_plus @ sigma).real
        out[k] = min(max(p, 0.0), 1.0)
    return out


def sequence_success_probabilities(model: QuantumModel, spec: ProtocolSpec) -> np.ndarray:
    """Probability that each sequence yields its expected outcome, in spec order."""
    p_plus = _p_plus_per_sequence(model, spec)
    want_plus = np.array([spec.outcomes[s] == OUTCOME_PLUS for s in spec.sequences])
    return np.where(want_plus, p_plus, 1.0 - p_plus)


def pass_probability(model: QuantumModel, spec: ProtocolSpec) -> float:
    """Mass-weighted probability that one repetition yields the expected outcome.

    Affine in each model component (state, each channel, each effect).
    """
    return float(np.dot(spec.mu, sequence_success_probabilities(model, spec)))


@dataclass(frozen=True)
class RunResult:
    verdict: str  # "accept" | "reject"
    repetitions_executed: int
    failing_sequence: Sequence | None = None
    observed_outcome: str | None = None


def run_protocol(model: QuantumModel, spec: ProtocolSpec, n: int, seed: int = 0) -> RunResult:
    """Sample n repetitions, rejecting at the first wrong outcome.

    Repetition k consumes the fixed draw pair (2k, 2k+1) of the stream
    derived from the seed, so the verdict is independent of execution order.
    Outcomes are Bernoulli draws on the exact per-sequence traces.
    """
    if n < 1:
        raise ValidationError("n must be at least 1")
    p_plus = _p_plus_per_sequence(model, spec)
    want_plus = np.array([spec.outcomes[s] == OUTCOME_PLUS for s in spec.sequences])
    cum = np.cumsum(spec.mu)
    draws = rng.substream(seed, rng.DOMAIN_PROTOCOL, 0).random((n, 2))
    idx = np.searchsorted(cum, draws[:, 0], side="right")
    idx = np.minimum(idx, len(spec.sequences) - 1)  # guard the u ~ 1.0 edge
    plus_observed = draws[:, 1] < p_plus[idx]
    success = plus_observed == want_plus[idx]
    bad = np.flatnonzero(~success)
    if bad.size == 0:
        return RunResult("accept", int(n))
    k = int(bad[0])
    observed = OUTCOME_PLUS if plus_observed[k] else OUTCOME_MINUS
    return RunResult("reject", k + 1, spec.sequences[int(idx[k])], observed)


def sample_complexity(eps: float, delta: float, slope_constant: float | None = None) -> int:
    """Repetitions needed to reject a bad model with confidence 1 - delta.

    Without a slope constant, eps is the per-repetition failure probability
    and the count is ceil(ln(1/delta) / ln(1/(1-eps))).  With a slope
    constant c relating failure probability to model distance, eps is the
    distance target and the count is ceil((c/eps) * ln(1/delta)).
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps must lie strictly between 0 and 1")
    if not 0.0 < delta < 1.0:
        raise ValidationError("delta must lie strictly between 0 and 1")
    if slope_constant is None:
        return math.ceil(math.log(1.0 / delta) / math.log(1.0 / (1.0 - eps)))
    if slope_constant <= 0.0:
        raise ValidationError("slope constant must be positive")
    return math.ceil(slope_constant / eps * math.log(1.0 / delta))
