"""Command-line interface: ``cartanflow <command> ...``.

Exit status: 0 success, 1 a check failed, 2 invalid input, 3 a solver did not
converge (or another numerical failure).

Tables are CSV with a header row and 17 significant digits, written to
``--out`` or stdout; ``--format json`` writes the same content as JSON.
Commands that produce a scan also render an SVG figure next to ``--out``
(same stem) or at ``--plot``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import plotting
from .barycenter import SolverOptions, cartan_barycenter
from .checks import ACCEPTANCE, ALL_CHECKS, run_checks
from .errors import ConvergenceError, InvalidArgumentError, NumericalFailure
from .generate import RunConfig, generate_measure
from .io import dump_measure, load_matrix, load_measure, write_csv
from .spd import operator_norm, riem_dist
from .trajectory import beta, fixed_point_check, lie_trotter_scan, norm_monotonicity_scan
from .wasserstein import d1w

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_NONCONVERGED = 0, 1, 2, 3


def parse_real(text: str) -> float:
    """A float, or a power written ``b^e`` such as ``2^-10``."""
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            return float(base) ** float(exp)
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def parse_grid(text: str) -> np.ndarray:
    """``a:b:n`` -> ``n`` equally spaced points from ``a`` to ``b`` inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be a:b:n, got {text!r}")
    a, b = parse_real(parts[0]), parse_real(parts[1])
    try:
        n = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid point count must be an integer, got {parts[2]!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    return np.linspace(a, b, n)


def parse_list(text: str) -> list[float]:
    return [parse_real(x) for x in text.split(",") if x.strip()]


def dyadic(tmin: float, tmax: float = 1.0) -> np.ndarray:
    """``tmax, tmax/2, ...`` down to the first value ``<= tmin``."""
    if not 0 < tmin <= tmax:
        raise InvalidArgumentError(f"need 0 < tmin <= tmax, got tmin={tmin}, tmax={tmax}")
    ts = [tmax]
    while ts[-1] > tmin * (1 + 1e-12):
        ts.append(ts[-1] / 2.0)
    return np.array(ts)


def solver_options(args) -> SolverOptions:
    return SolverOptions(tol=args.tol, max_iter=args.max_iter, init=getattr(args, "init", "log_euclidean"))


def emit(args, header, rows, doc=None) -> None:
    """Write a table as CSV, or ``doc`` (default: list of row dicts) as JSON."""
    if args.format == "json":
        if doc is None:
            doc = [dict(zip(header, (_jsonable(v) for v in row))) for row in rows]
        text = json.dumps(doc, indent=1) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        write_csv(header, rows, args.out)


def _jsonable(v):
    if isinstance(v, np.generic):
        return v.item()
    return v


def figure_path(args) -> Path | None:
    if getattr(args, "no_plot", False):
        return None
    if args.plot:
        return Path(args.plot)
    if args.out:
        return Path(args.out).with_suffix(".svg")
    return None


def matrix_rows(name, M):
    return [(name, i + 1, j + 1, M[i, j]) for i in range(M.shape[0]) for j in range(M.shape[1])]


# ---------------------------------------------------------------- commands


def cmd_barycenter(args) -> int:
    mu = load_measure(args.measure)
    report = cartan_barycenter(mu, solver_options(args))
    rows = matrix_rows("X", report.result) + [
        ("residual_norm", "", "", report.residual_norm),
        ("iterations", "", "", report.iterations),
        ("converged", "", "", report.converged),
    ]
    doc = {
        "matrix": report.result.tolist(),
        "residual_norm": report.residual_norm,
        "iterations": report.iterations,
        "converged": report.converged,
    }
    emit(args, ["quantity", "i", "j", "value"], rows, doc)
    if not report.converged:
        print(
            f"error: barycenter did not converge in {report.iterations} iterations "
            f"(residual {report.residual_norm:.3e} > tol {args.tol:.3e})",
            file=sys.stderr,
        )
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_wasserstein(args) -> int:
    mu, nu = load_measure(args.first), load_measure(args.second)
    distance, plan = d1w(mu, nu)
    entries = list(plan.entries())
    if args.plan:
        write_csv(["row", "col", "mass"], entries, args.plan)
    doc = {"distance": distance, "plan": [{"row": i, "col": j, "mass": m} for i, j, m in entries]}
    emit(args, ["distance"], [(distance,)], doc)
    return EXIT_OK


def cmd_trajectory(args) -> int:
    mu = load_measure(args.measure)
    X = load_matrix(args.x)
    opts = solver_options(args)
    header = ["t", "distance_from_x", "trace", "log_det", "operator_norm", "residual_norm", "iterations"]
    rows = []
    for t in args.grid:
        s = beta(X, mu, float(t), opts)
        rows.append(
            (
                s.t,
                riem_dist(X, s.beta),
                float(np.trace(s.beta)),
                float(np.linalg.slogdet(s.beta)[1]),
                operator_norm(s.beta),
                s.residual_norm,
                s.solver_iterations,
            )
        )
    emit(args, header, rows)
    path = figure_path(args)
    if path:
        cols = np.array([r[1:4] for r in rows], dtype=float)
        plotting.plot_trajectory(
            [r[0] for r in rows],
            {"$d(X, \\beta(t))$": cols[:, 0], "$\\log\\det\\beta(t)$": cols[:, 2]},
            path,
        )
    return EXIT_OK


def cmd_lie_trotter(args) -> int:
    mu = load_measure(args.measure)
    records = lie_trotter_scan(mu, dyadic(args.tmin, args.tmax), solver_options(args))
    header = ["t", "error"] + [f"ky_fan_{k}" for k in range(1, mu.dim + 1)] + ["schatten_1", "schatten_2", "iterations"]
    rows = [(r.t, r.error, *r.ky_fan, r.schatten1, r.schatten2, r.iterations) for r in records]
    emit(args, header, rows)
    path = figure_path(args)
    if path:
        plotting.plot_lie_trotter([r.t for r in records], [r.error for r in records], path)
    return EXIT_OK


def cmd_norm_scan(args) -> int:
    mu = load_measure(args.measure)
    scan = norm_monotonicity_scan(mu, dyadic(args.tmin, args.tmax), solver_options(args))
    header = ["t", "k", "forward", "inverse", "limit"]
    rows = [
        (t, k + 1, scan.forward[i, k], scan.inverse[i, k], scan.limit[k])
        for i, t in enumerate(scan.ts)
        for k in range(mu.dim)
    ]
    emit(args, header, rows)
    path = figure_path(args)
    if path:
        plotting.plot_norm_scan(scan.ts, scan.forward, scan.limit, path)
    return EXIT_OK


def cmd_fixed_point(args) -> int:
    mu = load_measure(args.measure)
    X = load_matrix(args.x)
    report = fixed_point_check(X, mu, args.ts, solver_options(args), slack=args.slack)
    names = ["derivative_norm", "barycenter_distance", "trajectory_displacement", "reduced_displacement"]
    rows = [(n, v) for n, v in zip(names, report.values)] + [("is_fixed_point", report.is_fixed_point)]
    doc = {**dict(zip(names, report.values)), "slack": report.slack, "is_fixed_point": report.is_fixed_point}
    emit(args, ["quantity", "value"], rows, doc)
    return EXIT_OK


def cmd_generate(args) -> int:
    config = RunConfig(seed=args.seed, dim=args.dim, support=args.support, spread=args.spread, weights=args.weights)
    text = dump_measure(generate_measure(config), args.output)
    if args.output is None:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_suite(args) -> int:
    names = list(ACCEPTANCE) if args.acceptance_only else list(ALL_CHECKS)
    if args.only:
        names = args.only.split(",")
        unknown = [n for n in names if n not in ALL_CHECKS]
        if unknown:
            raise InvalidArgumentError(f"unknown checks: {', '.join(unknown)}")
    if args.list:
        for name in names:
            print(name)
        return EXIT_OK
    opts = None
    if args.tol is not None or args.max_iter is not None:
        defaults = SolverOptions()
        opts = SolverOptions(
            tol=defaults.tol if args.tol is None else args.tol,
            max_iter=defaults.max_iter if args.max_iter is None else args.max_iter,
        )

    def progress(result):
        print(result.line(), flush=True)

    try:
        results = run_checks(seed=args.seed, names=names, opts=opts, progress=progress)
    except ConvergenceError as exc:
        print(f"error: solver did not converge during the suite: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed" + (f"; failed: {', '.join(failed)}" if failed else ""))
    if args.report:
        doc = {
            "seed": args.seed,
            "solver": {"tol": (opts or SolverOptions()).tol, "max_iter": (opts or SolverOptions()).max_iter},
            "passed": not failed,
            "checks": [r.to_dict() for r in results],
        }
        report = Path(args.report)
        report.write_text(json.dumps(doc, indent=1) + "\n")
        if not args.no_plot:
            plotting.plot_suite(
                [r.name for r in results],
                [r.measured for r in results],
                [r.bound for r in results],
                [r.passed for r in results],
                args.plot or report.with_suffix(".svg"),
            )
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartanflow",
        description="Cartan barycenters, geometric mean flows and the barycentric trajectory on SPD matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--tol", type=parse_real, default=1e-12, help="Karcher residual tolerance (default 1e-12)")
    solver.add_argument("--max-iter", type=int, default=500, help="solver iteration cap (default 500)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", help="write the table here instead of stdout")
    output.add_argument("--format", choices=("csv", "json"), default="csv")

    figure = argparse.ArgumentParser(add_help=False)
    figure.add_argument("--plot", help="SVG figure path (default: next to --out)")
    figure.add_argument("--no-plot", action="store_true", help="do not render a figure")

    scan = argparse.ArgumentParser(add_help=False)
    scan.add_argument("--tmin", type=parse_real, default=2.0**-10, help="smallest t, e.g. 2^-10")
    scan.add_argument("--tmax", type=parse_real, default=1.0, help="largest t (default 1)")

    p = sub.add_parser("barycenter", parents=[solver, output], help="Cartan barycenter of a measure file")
    p.add_argument("measure")
    p.add_argument("--init", choices=("log_euclidean", "first_atom"), default="log_euclidean")
    p.set_defaults(func=cmd_barycenter)

    p = sub.add_parser("wasserstein", parents=[output], help="1-Wasserstein distance between two measure files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--plan", help="write the optimal plan as CSV (row, col, mass)")
    p.set_defaults(func=cmd_wasserstein)

    p = sub.add_parser("trajectory", parents=[solver, output, figure], help="beta(t) = G(X #_t mu) on a grid")
    p.add_argument("measure")
    p.add_argument("--x", required=True, help="matrix file for the base point X")
    p.add_argument("--grid", type=parse_grid, default=parse_grid("-1:1:9"), help="a:b:n (default -1:1:9)")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser(
        "lie-trotter", parents=[solver, output, figure, scan], help="G(mu^t)^{1/t} against its t -> 0 limit"
    )
    p.add_argument("measure")
    p.set_defaults(func=cmd_lie_trotter)

    p = sub.add_parser("norm-scan", parents=[solver, output, figure, scan], help="Ky Fan norms along t -> 0")
    p.add_argument("measure")
    p.set_defaults(func=cmd_norm_scan, tmin=2.0**-8)

    p = sub.add_parser("fixed-point", parents=[solver, output], help="fixed-point diagnostics at X")
    p.add_argument("measure")
    p.add_argument("--x", required=True, help="matrix file for X")
    p.add_argument("--ts", type=parse_list, default=[-2.0, -0.5, 0.5, 2.0], help="comma-separated t values")
    p.add_argument("--slack", type=parse_real, default=1e-7)
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("generate", help="write a seeded random measure file")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--support", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spread", type=float, default=0.7)
    p.add_argument("--weights", choices=("uniform", "dirichlet"), default="uniform")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("suite", help="run the property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--list", action="store_true", help="print check names and exit")
    p.add_argument("--only", help="comma-separated check names")
    p.add_argument("--acceptance-only", action="store_true", help="run only the acceptance checks")
    p.add_argument("--tol", type=parse_real, default=None, help="override the solver tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="override the solver iteration cap")
    p.add_argument("--report", help="write a JSON report here (and an SVG summary beside it)")
    p.add_argument("--plot", help="SVG summary path (default: next to --report)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except NumericalFailure as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (InvalidArgumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
