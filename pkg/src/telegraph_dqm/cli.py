"""Command-line front end: ``solve``, ``bench``, ``stability`` and ``weights``.

Every file lands in ``--out`` (default: ``$TELEGRAPH_DQM_OUT`` or the
current directory). CSV is the canonical format with floats written as
``%.9e``; ``--format json`` writes the same rows as a list of objects.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .benchmarks import PROBLEM_IDS, error_norms, get_problem, run_benchmark
from .boundary import ClosureError
from .custom_problem import load_problem
from .dqm_weights import SingularSystemError, compute_weights, exactness_residual, line_weights
from .grid import make_grid
from .spline_basis import modified_basis
from .ssprk import SCHEMES, IntegrationError, StepConfig, integrate
from .stability import NumericalFailure, stability_report, write_spectrum
from .telegraph_rhs import InputDataError, initial_state

__all__ = ["main", "build_parser", "ENV_OUT"]

ENV_OUT = "TELEGRAPH_DQM_OUT"
FLOAT_FMT = "%.9e"

BENCH_FIELDS = ["problem", "grid", "h", "dt", "scheme", "t", "L2", "Linf", "Re"]

_EXPECTED_ERRORS = (
    ValueError,
    ArithmeticError,
    FloatingPointError,
    OSError,
    InputDataError,
    ClosureError,
    SingularSystemError,
    IntegrationError,
    NumericalFailure,
)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v
    return str(v)


def write_rows(path: Path, fields: Sequence[str], rows: Sequence[dict], fmt: str) -> Path:
    """Write ``rows`` with columns ``fields``; returns the path written."""
    path = path.with_suffix("." + fmt)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        clean = [{k: (float(r[k]) if isinstance(r[k], np.floating) else r[k]) for k in fields} for r in rows]
        path.write_text(json.dumps(clean, indent=1) + "\n")
    else:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(fields)
            for r in rows:
                writer.writerow([_fmt(r[k]) for k in fields])
    return path


def _out_dir(args) -> Path:
    if args.out is not None:
        return Path(args.out)
    return Path(os.environ.get(ENV_OUT, "."))


def _load(args, pid=None):
    if getattr(args, "problem_file", None):
        return load_problem(args.problem_file)
    pid = args.problem if pid is None else pid
    return get_problem(pid, alpha=args.alpha, beta=args.beta)


def _dump_weights(out: Path, nx: int, ny: int, fmt: str) -> list[Path]:
    written = []
    for axis, n in (("x", nx), ("y", ny)):
        if axis == "y" and ny == nx:
            continue
        w1, w2 = line_weights(n)
        for order, mat in ((1, w1), (2, w2)):
            rows = [{"i": i, **{f"w{j}": float(mat[i, j]) for j in range(n)}} for i in range(n)]
            written.append(
                write_rows(out / f"weights_{axis}_n{n}_order{order}", ["i"] + [f"w{j}" for j in range(n)], rows, fmt)
            )
    return written


# -- subcommands -----------------------------------------------------------


def cmd_solve(args) -> int:
    problem = _load(args)
    ny = args.ny or args.nx
    grid = make_grid(args.nx, ny)
    w = compute_weights(grid)
    times = sorted(args.times) if args.times else [1.0]
    cfg = StepConfig(dt=args.dt, t_end=times[-1], scheme=args.scheme)
    wanted = {}
    for t in times:
        wanted.setdefault(cfg.steps_to(t), []).append(t)
    X, Y = grid.mesh()
    surface, errors = [], []

    def snap(k, state):
        for t in wanted.get(k, ()):
            for x, y, u in zip(X.ravel(), Y.ravel(), state.u.ravel()):
                surface.append({"t": float(t), "x": float(x), "y": float(y), "u": float(u)})
            if problem.exact is not None:
                rep = error_norms(state.u, problem.exact(X, Y, state.t), grid.gx.h)
                errors.append(
                    {"problem": problem.name, "grid": grid.label, "h": grid.gx.h, "dt": cfg.dt,
                     "scheme": cfg.scheme, "t": float(t), "L2": rep.L2, "Linf": rep.Linf, "Re": rep.Re}
                )

    integrate(initial_state(problem, grid), problem, grid, w, cfg, callback=snap)

    out = _out_dir(args)
    stem = f"solve_{problem.name}_{grid.label}_{cfg.scheme}"
    paths = [write_rows(out / stem, ["t", "x", "y", "u"], surface, args.format)]
    if errors:
        paths.append(write_rows(out / (stem + "_errors"), BENCH_FIELDS, errors, args.format))
    if args.dump_weights:
        paths += _dump_weights(out, grid.nx, grid.ny, args.format)
    for row in errors:
        print(f"{row['problem']} {row['grid']} t={row['t']:g} L2={row['L2']:.4e} Linf={row['Linf']:.4e} Re={row['Re']:.4e}")
    for p in paths:
        print(f"wrote {p}")
    return 0


def _bench_cell(cell):
    """One (problem, grid, dt, scheme) run; never raises."""
    source, pid, alpha, beta, n, dt, scheme, times = cell
    try:
        problem = load_problem(source) if source else get_problem(pid, alpha=alpha, beta=beta)
        grid = make_grid(n, n)
        reports = run_benchmark(problem, grid, StepConfig(dt=dt, t_end=0.0, scheme=scheme), times)
        return [
            {"problem": problem.name, "grid": grid.label, "h": grid.gx.h, "dt": dt, "scheme": scheme,
             "t": r.t, "L2": r.L2, "Linf": r.Linf, "Re": r.Re}
            for r in reports
        ]
    except _EXPECTED_ERRORS as err:
        reason = "FAIL(" + " ".join(str(err).replace(",", ";").split()) + ")"
        name = f"P{pid}" if not source else Path(source).stem
        return [
            {"problem": name, "grid": f"{n}x{n}", "h": 1.0 / (n - 1), "dt": dt, "scheme": scheme,
             "t": float(t), "L2": reason, "Linf": reason, "Re": reason}
            for t in times
        ]


def _paired(rows, schemes):
    """Side-by-side scheme columns keyed by (problem, grid, dt, t)."""
    keyed = {}
    for r in rows:
        key = (r["problem"], r["grid"], r["h"], r["dt"], r["t"])
        entry = keyed.setdefault(key, dict(zip(["problem", "grid", "h", "dt", "t"], key)))
        for k in ("L2", "Linf", "Re"):
            entry[f"{k}_{r['scheme']}"] = r[k]
    fields = ["problem", "grid", "h", "dt", "t"] + [f"{k}_{s}" for s in schemes for k in ("L2", "Linf", "Re")]
    for entry in keyed.values():
        for f in fields:
            entry.setdefault(f, "")
    return fields, list(keyed.values())


def cmd_bench(args) -> int:
    if args.problem_file:
        sources = [(args.problem_file, None)]
    else:
        pids = args.problem or list(PROBLEM_IDS)
        for pid in pids:
            get_problem(pid)  # reject unknown ids before any work starts
        sources = [(None, pid) for pid in pids]
    schemes = list(dict.fromkeys(args.scheme or ["rk43"]))
    times = sorted(args.times) if args.times is not None else [1.0]
    cells = [
        (src, pid, args.alpha, args.beta, n, dt, s, times)
        for src, pid in sources
        for n in args.nx
        for dt in args.dt
        for s in schemes
    ]
    if args.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_cell, cells))
    else:
        results = [_bench_cell(c) for c in cells]
    rows = [r for res in results for r in res]
    rows.sort(key=lambda r: (r["problem"], r["h"], r["dt"], r["t"], schemes.index(r["scheme"])))

    out = _out_dir(args)
    paths = [write_rows(out / "bench", BENCH_FIELDS, rows, args.format)]
    if len(schemes) > 1:
        fields, paired = _paired(rows, schemes)
        paths.append(write_rows(out / "bench_paired", fields, paired, args.format))
    failed = sum(1 for r in rows if isinstance(r["Linf"], str))
    print(f"{len(rows)} rows, {failed} failed")
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_stability(args) -> int:
    out = _out_dir(args)
    lines = []
    for n in args.nx:
        grid = make_grid(n, n)
        res = stability_report(compute_weights(grid), grid, args.alpha_stab, args.beta_stab, dt=args.dt_stab, scheme=args.scheme)
        out.mkdir(parents=True, exist_ok=True)
        write_spectrum(res, out / f"spectrum_{grid.label}.{args.format}", fmt=args.format)
        lines.append(res.summary())
        print(res.summary())
    (out / "stability_summary.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {out / 'stability_summary.txt'}")
    return 0


def cmd_weights(args) -> int:
    out = _out_dir(args)
    ny = args.ny or args.nx
    for n in sorted({args.nx, ny}):
        basis = modified_basis(make_grid(n, n).gx)
        w1, _ = line_weights(n)
        print(f"n={n} exactness residual {exactness_residual(w1, basis):.3e}")
    for p in _dump_weights(out, args.nx, ny, args.format):
        print(f"wrote {p}")
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="telegraph-dqm",
        description="Trigonometric B-spline quadrature solver for the 2D telegraph equation.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help=f"output directory (default ${ENV_OUT} or .)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def problem_args(p, many=False):
        g = p.add_mutually_exclusive_group()
        if many:
            g.add_argument("--problem", type=int, nargs="+", help=f"problem ids from {list(PROBLEM_IDS)} (default all)")
        else:
            g.add_argument("--problem", type=int, default=4, help=f"problem id from {list(PROBLEM_IDS)}")
        g.add_argument("--problem-file", default=None, help="JSON description of a custom problem")
        p.add_argument("--alpha", type=float, default=None, help="override the damping coefficient")
        p.add_argument("--beta", type=float, default=None, help="override the reaction coefficient")

    p = sub.add_parser("solve", help="integrate one problem and write solution surfaces")
    problem_args(p)
    p.add_argument("--nx", type=int, default=11)
    p.add_argument("--ny", type=int, default=None, help="defaults to --nx")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--scheme", choices=sorted(SCHEMES), default="rk43")
    p.add_argument("--times", type=float, nargs="*", default=None, help="snapshot times (default 1)")
    p.add_argument("--dump-weights", action="store_true", help="also write the weight matrices")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="error tables over problems, grids, steps and schemes")
    problem_args(p, many=True)
    p.add_argument("--nx", type=int, nargs="+", default=[11], help="nodes per side (square grids)")
    p.add_argument("--dt", type=float, nargs="+", default=[0.01])
    p.add_argument("--scheme", choices=sorted(SCHEMES), nargs="+", default=None)
    p.add_argument("--times", type=float, nargs="*", default=None, help="snapshot times (default 1)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent cells")
    common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stability", help="spectra of the semi-discrete operator")
    p.add_argument("--nx", type=int, nargs="+", default=[11, 21, 31, 41])
    p.add_argument("--alpha", dest="alpha_stab", type=float, default=1.0)
    p.add_argument("--beta", dest="beta_stab", type=float, default=1.0)
    p.add_argument("--dt", dest="dt_stab", type=float, default=None, help="report max|lambda|*dt against the scheme bound")
    p.add_argument("--scheme", choices=sorted(SCHEMES), default="rk43")
    common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("weights", help="write the quadrature weight matrices")
    p.add_argument("--nx", type=int, default=11)
    p.add_argument("--ny", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_weights)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _EXPECTED_ERRORS as err:
        print(f"telegraph-dqm {args.command}: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
