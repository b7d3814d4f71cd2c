"""Scatter experiments: failure probability against certified model distance.

Each sample draws one noisy model, certifies it, and records the exact
single-repetition failure probability together with the component
distances.  worst_slope is the steepest origin-anchored ray through any
retained point, i.e. max(distance / epsilon) over points with epsilon at
or above the floor.  Output is deterministic per (seed, sample count).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from . import noise, protocol, selftest
from .errors import DegenerateModelError, SchemaError, ValidationError

EPSILON_FLOOR = 1e-8

CSV_HEADER = "index,epsilon,distance,d_state,d_meas,infid_s,infid_sinv"


@dataclass(frozen=True)
class ScatterPoint:
    index: int
    epsilon: float
    distance: float
    d_state: float
    d_meas: float
    infid_s: float
    infid_sinv: float


@dataclass(frozen=True)
class SweepSummary:
    samples: int
    retained: int
    extraction_failures: int
    worst_slope: float
    epsilon_floor: float
    seed: int


def scatter_sweep(samples: int, cfg: noise.NoiseConfig,
                  epsilon_floor: float = EPSILON_FLOOR,
                  ) -> tuple[list[ScatterPoint], SweepSummary]:
    """Certify `samples` random models; sample k uses stream index k.

    Models whose frames cannot be extracted are counted in the summary and
    produce no point.  Points below the epsilon floor are kept in the output
    but excluded from the slope.
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    if not epsilon_floor > 0.0:
        raise ValidationError("epsilon floor must be positive")
    spec = protocol.s_gate_spec()
    points: list[ScatterPoint] = []
    failures = 0
    retained = 0
    worst = 0.0
    for index in range(samples):
        model = noise.random_noisy_model(cfg, index)
        try:
            report = selftest.certify(model, spec)
        except DegenerateModelError:
            failures += 1
            continue
        point = ScatterPoint(
            index=index,
            epsilon=report.epsilon_fail,
            distance=report.model_distance,
            d_state=1.0 - report.state_fidelity,
            d_meas=report.meas_spectral_distance,
            infid_s=1.0 - report.favg_s,
            infid_sinv=1.0 - report.favg_sinv,
        )
        points.append(point)
        if point.epsilon >= epsilon_floor:
            retained += 1
            worst = max(worst, point.distance / point.epsilon)
    summary = SweepSummary(
        samples=samples,
        retained=retained,
        extraction_failures=failures,
        worst_slope=worst,
        epsilon_floor=epsilon_floor,
        seed=cfg.seed,
    )
    return points, summary


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def export_csv(points: list[ScatterPoint], summary: SweepSummary,
               path) -> tuple[str, str]:
    """Write points as CSV (12 significant digits) plus a sidecar summary JSON.

    Returns the two paths written.  Byte-identical for identical inputs.
    """
    csv_path = str(path)
    json_path = csv_path + ".summary.json" if not csv_path.endswith(".csv") \
        else csv_path[:-4] + ".summary.json"
    lines = [CSV_HEADER]
    for pt in points:
        lines.append(",".join([str(pt.index), _fmt(pt.epsilon), _fmt(pt.distance),
                               _fmt(pt.d_state), _fmt(pt.d_meas),
                               _fmt(pt.infid_s), _fmt(pt.infid_sinv)]))
    with open(csv_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(json_path, "w", newline="\n") as fh:
        json.dump(asdict(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def read_points_csv(path) -> list[ScatterPoint]:
    """Parse a points CSV written by export_csv."""
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise SchemaError(f"expected header {CSV_HEADER!r}")
    points = []
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 7:
            raise SchemaError(f"expected 7 fields, got {len(fields)}: {line!r}")
        points.append(ScatterPoint(int(fields[0]), *(float(x) for x in fields[1:])))
    return points


def read_summary_json(path) -> SweepSummary:
    with open(path) as fh:
        obj = json.load(fh)
    try:
        return SweepSummary(**obj)
    except TypeError as exc:
        raise SchemaError(f"bad summary fields: {exc}") from exc
