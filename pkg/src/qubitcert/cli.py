"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 unreadable or schema-invalid
input, 3 mathematical degeneracy (gauge extraction impossible).  The
default seed comes from the QUBITCERT_SEED environment variable when a
subcommand's --seed flag is omitted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import core, noise, protocol, selftest, serialize, sweep, universal
from .errors import DegenerateModelError, SchemaError, ValidationError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

ENV_SEED = "QUBITCERT_SEED"

_SPECS = {"s-gate": protocol.s_gate_spec, "universal": protocol.universal_spec}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2 for bad input."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"{ENV_SEED}={raw!r} is not an integer") from None


def _load_model(path: str) -> core.QuantumModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    model = serialize.model_from_json(data)
    violations = core.validate(model)
    if violations:
        detail = "; ".join(f"{v.component}: {v.check} (magnitude {v.magnitude:.3e})"
                           for v in violations)
        raise ValidationError(f"{path}: model fails validation: {detail}")
    return model


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        print(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _cmd_certify(args) -> int:
    model = _load_model(args.model)
    report = selftest.certify(model, _SPECS[args.spec]())
    _emit(json.dumps(serialize.gauge_report_to_json(report),
                     indent=2, sort_keys=True), args.out)
    return EXIT_OK


def _cmd_run(args) -> int:
    model = _load_model(args.model)
    result = protocol.run_protocol(model, _SPECS[args.spec](), args.n,
                                   _resolve_seed(args.seed))
    if args.json:
        print(json.dumps(serialize.run_result_to_json(result), sort_keys=True))
    elif result.verdict == "accept":
        print(f"accept after {result.repetitions_executed} repetitions")
    else:
        seq = protocol.format_sequence(result.failing_sequence) or "empty"
        print(f"reject at repetition {result.repetitions_executed}: "
              f"sequence {seq} gave {result.observed_outcome}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    alpha_range = None
    if args.alpha_lo is not None or args.alpha_hi is not None:
        alpha_range = (args.alpha_lo if args.alpha_lo is not None else 0.0,
                       args.alpha_hi if args.alpha_hi is not None else 1.0)
    cfg = noise.NoiseConfig(kind=args.noise, alpha_range=alpha_range,
                            p=args.p, gamma=args.gamma,
                            seed=_resolve_seed(args.seed))
    points, summary = sweep.scatter_sweep(args.samples, cfg)
    csv_path, json_path = sweep.export_csv(points, summary, args.out)
    if args.json:
        print(json.dumps({"csv": csv_path, "summary_file": json_path,
                          "summary": dataclasses.asdict(summary)},
                         sort_keys=True))
    else:
        print(f"wrote {summary.retained} points to {csv_path} "
              f"(worst slope {summary.worst_slope:.6g}, "
              f"{summary.extraction_failures} extraction failures)")
    return EXIT_OK


def _cmd_complexity(args) -> int:
    n = protocol.sample_complexity(args.eps, args.delta, args.slope)
    if args.json:
        print(json.dumps({"eps": args.eps, "delta": args.delta,
                          "slope_constant": args.slope, "repetitions": n},
                         sort_keys=True))
    else:
        print(n)
    return EXIT_OK


def _cmd_universal(args) -> int:
    model = _load_model(args.model)
    report = universal.verify_universal(model, tol=args.tol)
    if args.json:
        print(json.dumps(serialize.universal_report_to_json(report),
                         sort_keys=True))
    else:
        for name, ok in report.checks:
            print(f"[{'ok' if ok else 'FAIL'}] {name}")
        print(f"verdict: {report.verdict} (conjugated: {report.conjugated}, "
              f"t branch: {report.t_branch})")
    return EXIT_OK


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qubitcert",
                     description="Certify single-qubit gate models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[], help="extract gauge and report fidelities")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--spec", choices=("s-gate",), default="s-gate")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("run", help="Monte Carlo protocol run")
    p.add_argument("--model", required=True)
    p.add_argument("--spec", choices=tuple(_SPECS), default="s-gate")
    p.add_argument("--n", required=True, type=_positive_int,
                   help="number of repetitions")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="random-model scatter sweep to CSV")
    p.add_argument("--samples", required=True, type=_positive_int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--noise", choices=noise.KINDS, default="unitary")
    p.add_argument("--alpha-lo", type=float, default=None)
    p.add_argument("--alpha-hi", type=float, default=None)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("complexity", help="repetition count for a target confidence")
    p.add_argument("--eps", required=True, type=float)
    p.add_argument("--delta", required=True, type=float)
    p.add_argument("--slope", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_complexity)

    p = sub.add_parser("universal", help="exact four-gate verification")
    p.add_argument("--model", required=True)
    p.add_argument("--tol", type=float, default=universal.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_universal)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (SchemaError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
