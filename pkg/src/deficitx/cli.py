"""Command-line interface: ``deficitx {validate,compute,sweep,decohere,oracle}``.

Exit codes: 0 success, 1 usage or parse error, 2 invalid (unphysical) state.

A state is given by exactly one of ``--file`` (JSON, ``-`` for stdin),
the five inline Bloch flags, or ``--family``/``--param``.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import __version__
from .analytic import DeficitResult, one_way_deficit
from .channels import KRAUS_EXACT, PAPER_TRANSFORM, deficit_trajectory, detect_branch_transitions
from .families import FAMILIES, SWEEPABLE, family_point
from .oracle import OracleResult, OracleSettings, deficit_oracle
from .state import (
    BLOCH_KEYS,
    BlochX,
    InvalidStateError,
    XMatrix,
    from_matrix,
    parse_state_doc,
    state_from_dict,
    to_matrix,
    validate,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2

SWEEP_COLUMNS = ("parameter", "deficit", "branch", "g_at_0", "g_at_pi2", "h0", "h_pi2_prime", "theta_s") + BLOCH_KEYS
TRAJECTORY_COLUMNS = ("gamma", "deficit", "branch", "g_at_0", "g_at_pi2", "h0", "h_pi2_prime") + BLOCH_KEYS


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    """17-significant-digit text for floats, plain ``str`` otherwise."""
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


# --------------------------------------------------------------------------- state input


def _add_state_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("state (choose one form)")
    g.add_argument("--file", help="JSON state document; '-' reads stdin")
    for key in BLOCH_KEYS:
        g.add_argument(f"--{key}", type=float)
    g.add_argument("--family", help=f"one of {sorted(FAMILIES)}")
    g.add_argument("--param", help="family parameter (comma-separated t1,t2,t3 for bell-diagonal)")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path!r}: {exc}") from exc


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad numeric list {text!r}") from exc


def resolve_input(args) -> BlochX | XMatrix:
    """Unvalidated state from CLI arguments; raises UsageError on conflicts or parse failures."""
    inline = [getattr(args, k) for k in BLOCH_KEYS]
    given = [
        name
        for name, present in (
            ("--file", args.file is not None),
            ("inline flags", any(v is not None for v in inline)),
            ("--family", args.family is not None),
        )
        if present
    ]
    if len(given) != 1:
        raise UsageError(f"give exactly one state form, got {given or 'none'}")
    if args.file is not None:
        try:
            return parse_state_doc(_read_json(args.file))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.family is not None:
        if args.param is None:
            raise UsageError("--family needs --param")
        try:
            return family_point(args.family, *_parse_floats(args.param)).state
        except (KeyError, TypeError) as exc:
            raise UsageError(str(exc)) from exc
        except ValueError as exc:
            if isinstance(exc, InvalidStateError):
                raise
            raise UsageError(str(exc)) from exc
    if any(v is None for v in inline):
        raise UsageError("inline form needs all of --x --y --t1 --t2 --t3")
    return BlochX(*inline)


def _as_matrix(parsed: BlochX | XMatrix) -> XMatrix:
    return parsed if isinstance(parsed, XMatrix) else to_matrix(parsed)


def resolve_state(args) -> BlochX:
    """Validated Bloch-form state from CLI arguments."""
    parsed = resolve_input(args)
    report = validate(_as_matrix(parsed))
    if not report.valid:
        raise InvalidStateError(report)
    return parsed if isinstance(parsed, BlochX) else from_matrix(parsed)


def _threads(args) -> int:
    value = args.threads if args.threads is not None else os.environ.get("DEFICITX_THREADS", "1")
    try:
        n = int(value)
    except ValueError as exc:
        raise UsageError(f"bad thread count {value!r}") from exc
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


@contextmanager
def _executor(n: int):
    if n == 1:
        yield None
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            yield pool


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# --------------------------------------------------------------------------- records


def deficit_record(s: BlochX, r: DeficitResult) -> dict:
    d = r.decision
    return {
        "schema_version": SCHEMA_VERSION,
        "record": "deficit",
        "state": s.as_dict(),
        "canonical_state": r.canonical.as_dict(),
        "transforms": list(r.transforms),
        "deficit": r.deficit,
        "branch": str(d.branch),
        "h0": d.h0,
        "h_pi2_prime": d.h_pi2_prime,
        "theta_s": d.theta_s,
        "fallback": d.fallback,
        "g_min": r.g_min,
        "g_at_0": r.g_at_0,
        "g_at_pi2": r.g_at_pi2,
        "entropy": r.entropy,
    }


def oracle_record(s: BlochX, o: OracleResult, analytic: float | None = None) -> dict:
    rec = {
        "schema_version": SCHEMA_VERSION,
        "record": "oracle",
        "state": s.as_dict(),
        "oracle_g_min": o.g_min,
        "oracle_theta": o.argmin_angles.theta,
        "oracle_phi": o.argmin_angles.phi,
        "oracle_deficit": o.deficit,
        "evaluations": o.evaluations,
        "converged": o.converged,
    }
    if analytic is not None:
        rec["analytic_deficit"] = analytic
        rec["gap"] = abs(o.deficit - analytic)
    return rec


def _dump(rec: dict, out) -> None:
    out.write(json.dumps(rec) + "\n")


def _csv_header(out, columns, **meta) -> csv.writer:
    items = " ".join(f"{k}={v}" for k, v in meta.items())
    out.write(f"# deficitx schema_version={SCHEMA_VERSION} {items}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    return w


# --------------------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    report = validate(_as_matrix(resolve_input(args)), args.tol)
    rec = {
        "schema_version": SCHEMA_VERSION,
        "record": "validation",
        "valid": report.valid,
        "violations": [v._asdict() for v in report.violations],
    }
    _dump(rec, sys.stdout)
    return EXIT_OK if report.valid else EXIT_INVALID


def _oracle_settings(args) -> OracleSettings:
    try:
        return OracleSettings(args.theta_points, args.phi_points, args.refine_tol, args.max_iters)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_compute(args) -> int:
    s = resolve_state(args)
    r = one_way_deficit(s)
    rec = deficit_record(s, r)
    if args.oracle:
        o = deficit_oracle(s, _oracle_settings(args))
        rec.update({k: v for k, v in oracle_record(s, o, r.deficit).items() if k not in ("record", "state", "schema_version")})
    _dump(rec, sys.stdout)
    return EXIT_OK


def sweep_values(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise UsageError("--step must be positive")
    if stop < start:
        raise UsageError("--stop must not be below --start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [min(start + i * step, stop) for i in range(n)]


def cmd_sweep(args) -> int:
    if args.family not in SWEEPABLE:
        raise UsageError(f"unknown or non-sweepable family {args.family!r}; choose from {SWEEPABLE}")
    values = sweep_values(args.start, args.stop, args.step)
    n_threads = _threads(args)

    def row(v):
        try:
            s = family_point(args.family, v).state
        except InvalidStateError:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        r = one_way_deficit(s)
        d = r.decision
        return (v, r.deficit, d.branch, r.g_at_0, r.g_at_pi2, d.h0, d.h_pi2_prime, d.theta_s) + s.as_tuple()

    with _executor(n_threads) as pool:
        rows = list(pool.map(row, values) if pool else map(row, values))
    with _output(args.output) as out:
        w = _csv_header(out, SWEEP_COLUMNS, family=args.family)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    return EXIT_OK


def _gamma_grid(args) -> list[float]:
    if args.gammas is not None:
        return _parse_floats(args.gammas)
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if args.points == 1:
        return [0.0]
    return [float(g) for g in np.linspace(0.0, 1.0, args.points)]


def cmd_decohere(args) -> int:
    s = resolve_state(args)
    mode = PAPER_TRANSFORM if args.paper_mode else KRAUS_EXACT
    gammas = _gamma_grid(args)
    try:
        with _executor(_threads(args)) as pool:
            traj = deficit_trajectory(s, gammas, mode, executor=pool)
    except InvalidStateError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    transitions = detect_branch_transitions(traj, s, mode) if len(traj) >= 2 else []
    with _output(args.output) as out:
        w = _csv_header(out, TRAJECTORY_COLUMNS, mode=mode, **{k: fmt(v) for k, v in s.as_dict().items()})
        for p in traj:
            w.writerow([fmt(v) for v in (p.gamma, p.deficit, p.branch, p.g_at_0, p.g_at_pi2, p.h0, p.h_pi2_prime) + p.state.as_tuple()])
        out.write("# transitions: " + ",".join(fmt(g) for g in transitions) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    settings = _oracle_settings(args)
    if args.batch is None:
        s = resolve_state(args)
        o = deficit_oracle(s, settings)
        _dump(oracle_record(s, o, one_way_deficit(s).deficit), sys.stdout)
        return EXIT_OK
    docs = _read_json(args.batch)
    if not isinstance(docs, list):
        raise UsageError("--batch file must hold a JSON array of states")
    try:
        states = [state_from_dict(d) for d in docs]
    except InvalidStateError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    def one(s):
        return s, deficit_oracle(s, settings), one_way_deficit(s).deficit

    with _executor(_threads(args)) as pool:
        results = list(pool.map(one, states) if pool else map(one, states))
    gaps = []
    for s, o, a in results:
        rec = oracle_record(s, o, a)
        gaps.append(rec["gap"])
        if args.per_state:
            _dump(rec, sys.stdout)
    _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "record": "oracle_summary",
            "count": len(gaps),
            "max_gap": max(gaps, default=0.0),
            "mean_gap": float(np.mean(gaps)) if gaps else 0.0,
            "median_gap": float(np.median(gaps)) if gaps else 0.0,
        },
        sys.stdout,
    )
    return EXIT_OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deficitx", description="One-way quantum deficit of two-qubit X states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check physical constraints")
    _add_state_args(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_validate)

    def oracle_flags(q):
        q.add_argument("--theta-points", type=int, default=361)
        q.add_argument("--phi-points", type=int, default=181)
        q.add_argument("--refine-tol", type=float, default=1e-10)
        q.add_argument("--max-iters", type=int, default=200)

    p = sub.add_parser("compute", help="analytic deficit of one state")
    _add_state_args(p)
    p.add_argument("--oracle", action="store_true", help="append the brute-force value and the gap")
    oracle_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="deficit along a state family (CSV)")
    p.add_argument("--family", required=True)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--threads", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("decohere", help="deficit under phase damping (CSV)")
    _add_state_args(p)
    p.add_argument("--gammas", help="comma-separated, strictly increasing values in [0, 1]")
    p.add_argument("--points", type=int, default=101, help="uniform grid on [0, 1] when --gammas is absent")
    p.add_argument("--paper-mode", action="store_true", help="scale t1, t2 by (1-gamma)^2 instead of the Kraus factor")
    p.add_argument("--threads", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_decohere)

    p = sub.add_parser("oracle", help="brute-force minimization over measurements")
    _add_state_args(p)
    p.add_argument("--batch", help="JSON array of state documents")
    p.add_argument("--per-state", action="store_true", help="emit one record per batch state")
    p.add_argument("--threads", type=int)
    oracle_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"deficitx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidStateError as exc:
        print(f"deficitx: {exc}", file=sys.stderr)
        for v in exc.report.violations:
            print(f"  {v.constraint}{' ' + v.detail if v.detail else ''}: {v.measured!r} vs {v.bound!r}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
