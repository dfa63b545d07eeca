"""Command-line interface: arcs, geodesic comparison, Legendre tables and the verification suite.

Exit codes: 0 success, 1 verification failures, 2 invalid input, 3 math-domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import arc as A
from . import classical as C
from . import quantum as Q
from .errors import DomainError, EigenConvergenceError, StateSchemaError
from .spectral import SupportPolicy
from .states_io import dumps_state, load_state
from .verify import RunConfig, format_report, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3
FLOAT_FMT = ".17g"


class DomainAtT(Exception):
    """Math-domain failure tagged with the grid point where it happened."""

    def __init__(self, t, exc):
        super().__init__(str(exc))
        self.t = t
        self.exc = exc


def parse_grid(text: str) -> np.ndarray:
    """``min:max:count`` to an evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise StateSchemaError(f"grid must be min:max:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise StateSchemaError(f"grid must be min:max:count, got {text!r}") from exc
    if not lo < hi:
        raise StateSchemaError(f"grid needs min < max, got {lo!r}:{hi!r}")
    if count < 2:
        raise StateSchemaError(f"grid needs at least 2 points, got {count}")
    return np.linspace(lo, hi, count)


def load_pair(args):
    if args.input is None or args.target is None:
        raise StateSchemaError("--input and --target are both required")
    src, tgt = load_state(args.input), load_state(args.target)
    if type(src) is not type(tgt):
        raise StateSchemaError("input and target must be the same kind of state")
    if src.dim != tgt.dim:
        raise StateSchemaError(f"dimension mismatch: {src.dim} vs {tgt.dim}")
    return src, tgt


def load_observable(path, dim, quantum):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StateSchemaError(f"cannot read observable: {exc}") from exc
    arr = np.asarray(data, dtype=float)
    if not quantum:
        if arr.shape != (dim,):
            raise StateSchemaError(f"classical observable needs {dim} values")
        return arr
    if arr.shape != (dim * dim, 2):
        raise StateSchemaError(f"quantum observable needs {dim * dim} [re, im] entries")
    m = (arr[:, 0] + 1j * arr[:, 1]).reshape(dim, dim)
    if np.max(np.abs(m - m.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
        raise StateSchemaError("observable must be Hermitian")
    return m


class _Arc:
    """Uniform view over classical and quantum arcs for the commands."""

    def __init__(self, src, tgt, policy):
        self.quantum = isinstance(src, Q.DensityMatrix)
        self.src, self.tgt = src, tgt
        if self.quantum:
            self.density_arc = Q.DensityArc(src, tgt, policy)
            self.weights = self.density_arc.weights
        else:
            self.weights = C.radon_nikodym(src, tgt)

    def point(self, t):
        if self.quantum:
            return self.density_arc.density(t)
        return C.arc_point(self.src, self.tgt, t)

    def tangent(self, t, obs):
        if self.quantum:
            return self.density_arc.tangent(t, obs)
        return C.state_tangent(self.src, self.tgt, t, obs)


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FMT)
    return str(value)


def write_rows(rows, columns, output, stream):
    if output == "json":
        stream.write(json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r[c]) for c in columns])
    stream.write(buf.getvalue())


def _evaluate(grid, fn):
    rows = []
    for t in grid:
        t = float(t)
        try:
            rows.append(fn(t))
        except (DomainError, EigenConvergenceError) as exc:
            raise DomainAtT(t, exc) from exc
    return rows


def cmd_arc(args, stream):
    src, tgt = load_pair(args)
    grid = parse_grid(args.grid)
    arc = _Arc(src, tgt, _policy(args))
    obs = load_observable(args.observable, src.dim, arc.quantum) if args.observable else None
    columns = ["t", "zeta", "zeta_prime", "zeta_second", "dual_coordinate"]
    if obs is not None:
        columns.append("tangent")
    columns.append("state")

    def row(t):
        zp = A.zeta_prime(arc.weights, t)
        r = {
            "t": t,
            "zeta": A.zeta(arc.weights, t),
            "zeta_prime": zp,
            "zeta_second": A.zeta_second(arc.weights, t),
            "dual_coordinate": zp,
            "state": dumps_state(arc.point(t)),
        }
        if obs is not None:
            r["tangent"] = arc.tangent(t, obs)
        return r

    rows = _evaluate(grid, row)
    write_rows(rows, columns, args.output, stream)
    return EXIT_OK


def _as_density(state):
    if isinstance(state, Q.DensityMatrix):
        return state
    return Q.DensityMatrix(np.diag(state.weights * state.quadrature).astype(complex))


def cmd_compare_geodesic(args, stream):
    src, tgt = load_pair(args)
    grid = parse_grid(args.grid)
    policy = _policy(args)
    rx, ry = _as_density(src), _as_density(tgt)
    for label, rho in (("input", rx), ("target", ry)):
        if not rho.is_faithful(policy):
            raise DomainAtT(float(grid[0]), DomainError(f"{label} state is not strictly positive"))
    darc = Q.DensityArc(rx, ry, policy)
    comm = Q.commutator_norm(rx.matrix, ry.matrix)

    def row(t):
        dist = Q.trace_distance(darc.density(t).matrix, Q.log_geodesic(rx, ry, t, policy).matrix)
        return {"t": t, "trace_distance": dist, "commutator_norm": comm}

    rows = _evaluate(grid, row)
    write_rows(rows, ["t", "trace_distance", "commutator_norm"], args.output, stream)
    return EXIT_OK


def cmd_legendre(args, stream):
    src, tgt = load_pair(args)
    grid = parse_grid(args.grid)
    weights = _Arc(src, tgt, _policy(args)).weights

    def row(s):
        lp = A.legendre(weights, s)
        residual = abs(A.zeta(weights, lp.t_star) + lp.zeta_star - s * lp.t_star)
        return {"s": s, "t_star": lp.t_star, "zeta_star": lp.zeta_star,
                "residual": residual, "degenerate": lp.degenerate}

    rows = _evaluate(grid, row)
    write_rows(rows, ["s", "t_star", "zeta_star", "residual", "degenerate"], args.output, stream)
    return EXIT_OK


def cmd_verify(args, stream):
    pair = load_pair(args) if (args.input or args.target) else None
    cfg = RunConfig(seed=args.seed, tol=args.tol, policy=_policy(args))
    report = run_suite(cfg, pair=pair)
    stream.write(format_report(report) + "\n")
    return EXIT_OK if report["all_passed"] else EXIT_FAILED


def _policy(args):
    return SupportPolicy(mode=args.support)


def _seed(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be a non-negative integer")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="source state JSON file")
    common.add_argument("--target", help="target state JSON file")
    common.add_argument("--support", choices=("clip", "reject"), default="clip",
                        help="treatment of numerically zero eigenvalues (default: clip)")
    common.add_argument("--output", choices=("csv", "json"), default="csv", help="output format (default: csv)")

    parser = argparse.ArgumentParser(prog="exparc", description="Exponential arcs between states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arc", parents=[common], help="tabulate zeta, its derivatives and the arc states")
    p.add_argument("--grid", default="0:1:101", help="t grid as min:max:count (default: 0:1:101)")
    p.add_argument("--observable", help="JSON observable for an extra tangent column")
    p.set_defaults(func=cmd_arc)

    p = sub.add_parser("compare-geodesic", parents=[common],
                       help="trace distance between the arc and the log-Euclidean geodesic")
    p.add_argument("--grid", default="0:1:101", help="t grid as min:max:count (default: 0:1:101)")
    p.set_defaults(func=cmd_compare_geodesic)

    p = sub.add_parser("legendre", parents=[common], help="Legendre transform of zeta on a slope grid")
    p.add_argument("--grid", default="-1:1:21", help="slope grid as min:max:count (default: -1:1:21)")
    p.set_defaults(func=cmd_legendre)

    p = sub.add_parser("verify", parents=[common], help="run the seeded property suite")
    p.add_argument("--seed", type=_seed, default=42, help="random seed (default: 42)")
    p.add_argument("--tol", type=float, default=None, help="override every tolerance threshold")
    p.set_defaults(func=cmd_verify)
    return parser


def _error(kind, message, **extra):
    obj = {"error": kind, "message": message, **extra}
    sys.stderr.write(json.dumps(obj, sort_keys=True) + "\n")


def main(argv=None, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stream)
    except (StateSchemaError, OSError) as exc:
        _error("input", str(exc))
        return EXIT_INPUT
    except DomainAtT as exc:
        _error("domain", str(exc), t=exc.t, type=type(exc.exc).__name__)
        return EXIT_DOMAIN
    except (DomainError, EigenConvergenceError) as exc:
        _error("domain", str(exc), type=type(exc).__name__)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
