"""Command-line front end.

Every subcommand writes its machine-readable result to ``--out`` (or to
standard output when ``--out`` is omitted).  The short human summary goes to
standard output when ``--out`` is given and to standard error otherwise, so
piping the payload stays clean.  Exit codes: 0 success, 2 invalid input, 3 I/O failure,
4 numerical-consistency failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .errors import InvalidInputError, NumericalConsistencyError
from .mu_region import (
    DEFAULT_TGRID,
    KernelJoint,
    embed_joint_to_z,
    error_sum_check,
    strict_subset_evidence,
    trace_boundary,
)
from .observables import (
    DEFAULT_DIM,
    DEFAULT_GRID,
    ArcSet,
    DensityState,
    FockWindow,
    TorusWindow,
    phase_effect,
)
from .spectral import (
    COMPLEMENTARITY_SCHEDULE,
    CONVERGENCE_TOL,
    FOCK_SCHEDULE,
    TORUS_SCHEDULE,
    complementarity_decay,
    finite_section_ground,
    oscillator_fock_ground,
    oscillator_torus_ground,
    lenard_bound,
)
from .transport import ProbCircle, ProbInt, w2_circle, w2_integers

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4
FOCK_DIM_LIMIT = 4096
TORUS_HALF_WIDTH_LIMIT = 2048

CONJECTURE_NOTE = (
    "E0 (number-phase ground energy) as a bound on T x N error sums is an open conjecture, not verified"
)


class UsageError(InvalidInputError):
    pass


# -- parsing helpers --------------------------------------------------------

def parse_arcs(text: str) -> ArcSet:
    """Parse ``"a:b a:b ..."`` (radians) into an :class:`ArcSet`."""
    pieces = []
    for tok in text.split():
        parts = tok.split(":")
        if len(parts) != 2:
            raise UsageError(f"malformed arc {tok!r}; expected start:end")
        try:
            a, b = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise UsageError(f"malformed arc {tok!r}") from exc
        if not b > a:
            raise UsageError(f"arc {tok!r} must have end > start")
        pieces.append((a, b))
    if not pieces:
        raise UsageError("no arcs given")
    return ArcSet.from_intervals(pieces)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in str(text).replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in str(text).replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


def parse_circle_measure(spec: str) -> ProbCircle:
    """``uniform:N``, ``point:THETA``, ``file:PATH`` or a path to a ProbCircle JSON file."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "uniform":
            return ProbCircle.uniform_grid(int(arg))
        if kind == "point":
            return ProbCircle.point(float(arg))
    except ValueError as exc:
        raise UsageError(f"bad measure spec {spec!r}") from exc
    path = arg if kind == "file" else spec
    return io.probcircle_from_json(io.read_json(path))


def parse_int_measure(spec: str) -> ProbInt:
    """``point:K``, ``uniform:A..B``, ``file:PATH`` or a path to a ProbInt JSON file."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "point":
            return ProbInt.point(int(arg))
        if kind == "uniform":
            lo, hi = (int(v) for v in arg.split(".."))
            ks = np.arange(lo, hi + 1)
            return ProbInt.from_atoms(ks, np.full(ks.size, 1.0 / ks.size))
    except ValueError as exc:
        raise UsageError(f"bad measure spec {spec!r}") from exc
    path = arg if kind == "file" else spec
    return io.probint_from_json(io.read_json(path))


def _max_dim() -> int | None:
    raw = os.environ.get("NUMPHASE_MAX_DIM")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"NUMPHASE_MAX_DIM must be an integer, got {raw!r}") from exc


def check_fock_dim(dim: int) -> int:
    cap = _max_dim()
    if dim < 1 or dim > FOCK_DIM_LIMIT or (cap is not None and dim > cap):
        raise UsageError(f"Fock dimension {dim} outside allowed range")
    return dim


def check_torus_half_width(k: int) -> int:
    cap = _max_dim()
    if k < 0 or k > TORUS_HALF_WIDTH_LIMIT or (cap is not None and 2 * k + 1 > cap):
        raise UsageError(f"torus window [-{k}, {k}] outside allowed range")
    return k


def check_positive(name: str, value: float) -> float:
    if not value > 0:
        raise UsageError(f"{name} must be positive")
    return value


def _arcs_from_args(args) -> ArcSet:
    if getattr(args, "arcs_file", None):
        return io.arcset_from_json(io.read_json(args.arcs_file))
    if not args.arcs:
        raise UsageError("give --arcs or --arcs-file")
    return parse_arcs(args.arcs)


def _emit(args, text: str) -> None:
    if args.out:
        io.write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _say(args, msg: str) -> None:
    # the summary shares stdout only when the payload went to a file
    print(msg, file=sys.stdout if args.out else sys.stderr)


# -- commands ---------------------------------------------------------------

def cmd_phase_effect(args) -> int:
    X = _arcs_from_args(args)
    dim = check_fock_dim(args.dim)
    E = phase_effect(X, FockWindow(dim))
    _emit(args, io.dumps(io.matrix_to_json(E)))
    _say(args, f"phase effect: dim={dim} measure={X.measure:.12g}")
    return EXIT_OK


def cmd_ground(args) -> int:
    check_positive("tol", args.tol)
    dims = parse_int_list(args.dims) if args.dims else None
    if args.space == "fock":
        dims = dims or list(FOCK_SCHEDULE)
        for d in dims:
            check_fock_dim(d)
    else:
        dims = dims or list(TORUS_SCHEDULE)
        for d in dims:
            check_torus_half_width(d)
    if args.weight is None:
        fn = oscillator_fock_ground if args.space == "fock" else oscillator_torus_ground
        rep = fn(dims, tol=args.tol)
    else:
        rep = finite_section_ground(args.space, args.weight, dims, tol=args.tol)
    _emit(args, io.dumps(io.ground_report_to_json(rep)))
    labels = [k for k in range(5) if k in set(rep.indices.tolist())]
    mags = ", ".join(f"{m:.4f}" for m in rep.magnitudes(labels))
    _say(args, f"ground value: {rep.value:.10f} (converged: {str(rep.converged).lower()})")
    _say(args, f"|c_0..c_{labels[-1]}|: {mags}")
    return EXIT_OK


def cmd_lenard(args) -> int:
    X = _arcs_from_args(args)
    Y = parse_int_list(args.set)
    rep = lenard_bound(X, Y, FockWindow(check_fock_dim(args.dim)))
    _emit(args, io.dumps(io.lenard_report_to_json(rep)))
    _say(args, f"a_plus={rep.a_plus:.10f} bound={rep.bound:.10f} truncated_sup={rep.truncated_sup:.10f}")
    if rep.truncated_sup > rep.bound + 1e-9:
        raise NumericalConsistencyError("truncated supremum exceeds the Lenard bound")
    return EXIT_OK


def cmd_complementarity(args) -> int:
    X = _arcs_from_args(args)
    dims = parse_int_list(args.dims)
    for d in dims:
        check_fock_dim(d)
    rows = complementarity_decay(X, dims)
    if args.format == "csv":
        text = "k,alpha_max\n" + "".join(f"{k},{a!r}\n" for k, a in rows)
    else:
        text = io.dumps({"arcs": io.arcset_to_json(X)["arcs"],
                         "rows": [{"k": k, "alpha_max": a} for k, a in rows]})
    _emit(args, text)
    for k, a in rows:
        _say(args, f"k={k:5d}  alpha_max={a:.6e}")
    return EXIT_OK


def cmd_wasserstein(args) -> int:
    if args.kind == "circle":
        d = w2_circle(parse_circle_measure(args.mu), parse_circle_measure(args.nu))
    else:
        d = w2_integers(parse_int_measure(args.mu), parse_int_measure(args.nu))
    _emit(args, io.dumps({"kind": args.kind, "distance": d}))
    _say(args, f"W2 ({args.kind}) = {d:.10f}")
    return EXIT_OK


def cmd_mu_boundary(args) -> int:
    tgrid = parse_float_list(args.tgrid) if args.tgrid else list(DEFAULT_TGRID)
    dims = parse_int_list(args.dims) if args.dims else None
    check_positive("grid", args.grid)
    if dims:
        check = check_fock_dim if args.space == "fock" else check_torus_half_width
        for d in dims:
            check(d)
    curve = trace_boundary(args.space, tgrid, dims, grid=args.grid)
    if args.format == "json":
        text = io.dumps({"space": curve.space, "points": [
            {"t": p.t, **io.error_point_to_json(p.point), "energy": p.energy, "converged": p.converged}
            for p in curve.points]})
    else:
        text = io.boundary_to_csv(curve)
    _emit(args, text)
    for p in curve.points:
        flag = "" if p.converged else "  (not converged)"
        _say(args, f"t={p.t:.3f}  d1={p.point.d1:.6f}  d2={p.point.d2:.6f}  energy={p.energy:.8f}{flag}")
    if args.evidence:
        _say(args, "t, fock energy, torus energy, gap  (numerical evidence only; inclusion not decided)")
        for t, f, g, gap in strict_subset_evidence(tgrid):
            _say(args, f"{t:.3f}  {f:.8f}  {g:.8f}  {gap:.8f}")
    if args.space == "fock":
        _say(args, f"note: {CONJECTURE_NOTE}")
    return EXIT_OK


def _load_state(spec: str) -> DensityState:
    if spec == "minimizer":
        rep = oscillator_torus_ground()
        return DensityState.pure(TorusWindow(int(rep.indices[0]), int(rep.indices[-1])), rep.vector)
    if spec.startswith("basis:"):
        k = int(spec.split(":", 1)[1])
        return DensityState.basis(TorusWindow.symmetric(max(abs(k), 1)), k)
    d = io.read_json(spec)
    A = io.matrix_from_json(d)
    n = A.shape[0]
    kmin = d.get("kmin", -((n - 1) // 2))
    if not isinstance(kmin, int):
        raise UsageError("'kmin' must be an integer")
    return DensityState(TorusWindow(kmin, kmin + n - 1), A)


def cmd_error_sum(args) -> int:
    check_positive("grid", args.grid)
    sigma = _load_state(args.state)
    res = error_sum_check(sigma, grid=args.grid)
    _emit(args, io.dumps({"sum": res.total, "bound": res.bound, "satisfied": res.satisfied,
                          "fock_bound_status": "conjecture"}))
    _say(args, f"Q[2]+P[2] = {res.total:.10f} >= E~0 = {res.bound:.10f}: {res.satisfied}")
    _say(args, f"note: {CONJECTURE_NOTE}")
    if not res.satisfied:
        raise NumericalConsistencyError("error sum below the oscillator ground energy")
    return EXIT_OK


def cmd_embed(args) -> int:
    if args.kernel_file:
        F = io.kernel_joint_from_json(io.read_json(args.kernel_file))
    else:
        dim = check_fock_dim(args.dim)
        F = KernelJoint.smeared(dim, parse_circle_measure(args.phase), parse_int_measure(args.nu))
    window = TorusWindow.symmetric(args.half_width) if args.half_width is not None else None
    rep = embed_joint_to_z(F, window)
    _emit(args, io.dumps(io.embedding_report_to_json(rep)))
    _say(args, f"sup_k error (embedded) = {rep.sup_embedded:.12f}; sup_n error (source) = {rep.sup_source:.12f}; "
         f"max deviation = {rep.max_deviation:.3e}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_out(p):
    p.add_argument("--out", help="output file (default: standard output)")


def _add_arcs(p):
    p.add_argument("--arcs", help='arcs in radians, "a:b a:b ..."')
    p.add_argument("--arcs-file", help="ArcSet JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numphase", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with option defaults (flags take precedence)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-effect", help="truncated canonical phase effect matrix")
    _add_arcs(p)
    p.add_argument("--dim", type=int, default=DEFAULT_DIM)
    _add_out(p)
    p.set_defaults(func=cmd_phase_effect)

    p = sub.add_parser("ground", help="finite-section ground state")
    p.add_argument("--space", choices=("fock", "torus"), default="torus")
    p.add_argument("--weight", type=float, default=None,
                   help="t in [0,1] for (1-t) kinetic + t angular; omit for the unweighted oscillator")
    p.add_argument("--dims", help="section schedule (Fock dimensions or torus half-widths)")
    p.add_argument("--tol", type=float, default=CONVERGENCE_TOL)
    _add_out(p)
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("lenard", help="Lenard joint-predictability bound")
    _add_arcs(p)
    p.add_argument("--set", required=True, help="finite index set, e.g. 0,1")
    p.add_argument("--dim", type=int, default=DEFAULT_DIM)
    _add_out(p)
    p.set_defaults(func=cmd_lenard)

    p = sub.add_parser("complementarity", help="largest multiple of |0><0| below truncated Phi(X)")
    _add_arcs(p)
    p.add_argument("--dims", default=",".join(str(d) for d in COMPLEMENTARITY_SCHEDULE))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_out(p)
    p.set_defaults(func=cmd_complementarity)

    p = sub.add_parser("wasserstein", help="W2 distance between atomic measures")
    p.add_argument("--kind", choices=("circle", "integer"), default="circle")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    _add_out(p)
    p.set_defaults(func=cmd_wasserstein)

    p = sub.add_parser("mu-boundary", help="trace error pairs of weighted ground states")
    p.add_argument("--space", choices=("fock", "torus"), default="torus")
    p.add_argument("--tgrid", help="weights in (0,1), comma-separated")
    p.add_argument("--dims")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--evidence", action="store_true", help="also print fock/torus energy gaps")
    _add_out(p)
    p.set_defaults(func=cmd_mu_boundary)

    p = sub.add_parser("error-sum", help="check Q[2]+P[2] against the oscillator ground energy")
    p.add_argument("--state", default="minimizer",
                   help="'minimizer', 'basis:K', or a matrix JSON file (optional integer 'kmin')")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    _add_out(p)
    p.set_defaults(func=cmd_error_sum)

    p = sub.add_parser("embed", help="second-margin errors of the T x Z embedding")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--phase", default="point:0", help="constant phase kernel (circle measure spec)")
    p.add_argument("--nu", default="point:0", help="number smearing measure (integer measure spec)")
    p.add_argument("--kernel-file", help="KernelJoint JSON with phase_kernel / number_kernel lists")
    p.add_argument("--half-width", type=int, default=None)
    _add_out(p)
    p.set_defaults(func=cmd_embed)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = io.read_json(args.config)
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        cfg = {
            k.replace("-", "_"): (",".join(str(x) for x in v) if isinstance(v, list) else v)
            for k, v in cfg.items()
            if k not in ("command", "subcommand")
        }
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = set(cfg) - known
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {sorted(unknown)}")
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, UnicodeDecodeError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalConsistencyError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
