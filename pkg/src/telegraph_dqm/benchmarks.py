"""Six telegraph test problems, discrete error norms, and benchmark runs.

Problem numbering follows the order the cases are usually tabulated in:

=====  ==============================  ==========================================
  id   exact solution                  edges (x_lo, x_hi, y_lo, y_hi)
=====  ==============================  ==========================================
  1    exp(x + y - t)                  D, D, N, D
  2    exp(-t) sin(pi x) sin(pi y)     N, D, D, N
  3    log(1 + x + y + t)              D, N, N, D
  4    cos t sin x sin y               D, D, D, D
  5    exp(-t) sinh x sinh y           D, D, D, D   (alpha=10, beta in {0, 5})
  6    cos t sinh x sinh y             D, D, D, D   (alpha in {10, 50}, beta=5)
=====  ==============================  ==========================================

Neumann data are the coordinate derivatives ``u_x`` / ``u_y`` of the exact
solution on the edge.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .boundary import DIRICHLET, NEUMANN, BoundarySpec, EdgeSpec
from .dqm_weights import WeightSet, compute_weights
from .grid import Grid2D
from .ssprk import StepConfig, integrate
from .telegraph_rhs import TelegraphProblem, initial_state

__all__ = [
    "ErrorReport",
    "error_norms",
    "problem_catalog",
    "get_problem",
    "PROBLEM_IDS",
    "run_benchmark",
    "REFERENCE",
]

PROBLEM_IDS = (1, 2, 3, 4, 5, 6)

sin, cos, sinh, cosh, exp, log, pi = np.sin, np.cos, np.sinh, np.cosh, np.exp, np.log, np.pi


@dataclass(frozen=True)
class ErrorReport:
    """Discrete error norms at one time level.

    ``Re`` is ``nan`` when the exact field is identically zero.
    """

    L2: float
    Linf: float
    Re: float
    t: float = float("nan")
    grid: str = ""
    dt: float = float("nan")
    scheme: str = ""
    problem: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def error_norms(numeric, exact, h: float, **meta) -> ErrorReport:
    """``L2 = sqrt(h sum e^2)``, ``Linf = max e``, ``Re = sqrt(sum e^2 / sum u^2)``.

    Sums run over every grid node, boundary included, with a single ``h``.
    """
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape:
        raise ValueError(f"shape mismatch {numeric.shape} vs {exact.shape}")
    e2 = (numeric - exact) ** 2
    se2 = float(np.sum(e2))
    su2 = float(np.sum(exact**2))
    re = float(np.sqrt(se2 / su2)) if su2 > 0.0 else float("nan")
    return ErrorReport(
        L2=float(np.sqrt(h * se2)),
        Linf=float(np.sqrt(np.max(e2))) if e2.size else 0.0,
        Re=re,
        **meta,
    )


def _edges(x_lo, x_hi, y_lo, y_hi):
    return BoundarySpec(EdgeSpec(*x_lo), EdgeSpec(*x_hi), EdgeSpec(*y_lo), EdgeSpec(*y_hi))


def _problem1(alpha=1.0, beta=1.0):
    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=lambda x, y, t: -2.0 * exp(x + y - t),
        phi0=lambda x, y: exp(x + y),
        psi0=lambda x, y: -exp(x + y),
        bc=_edges(
            (DIRICHLET, lambda y, t: exp(y - t)),
            (DIRICHLET, lambda y, t: exp(1.0 + y - t)),
            (NEUMANN, lambda x, t: exp(x - t)),
            (DIRICHLET, lambda x, t: exp(1.0 + x - t)),
        ),
        exact=lambda x, y, t: exp(x + y - t),
        name="P1",
    )


def _problem2(alpha=1.0, beta=1.0):
    # forcing reduces to 2 pi^2 exp(-t) sin(pi x) sin(pi y) for alpha = beta = 1
    c = 1.0 - 2.0 * alpha + beta**2 + 2.0 * pi**2
    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=lambda x, y, t: c * exp(-t) * sin(pi * x) * sin(pi * y),
        phi0=lambda x, y: sin(pi * x) * sin(pi * y),
        psi0=lambda x, y: -sin(pi * x) * sin(pi * y),
        bc=_edges(
            (NEUMANN, lambda y, t: pi * exp(-t) * sin(pi * y)),
            (DIRICHLET, lambda y, t: 0.0 * y),
            (DIRICHLET, lambda x, t: 0.0 * x),
            (NEUMANN, lambda x, t: -pi * exp(-t) * sin(pi * x)),
        ),
        exact=lambda x, y, t: exp(-t) * sin(pi * x) * sin(pi * y),
        name="P2",
    )


def _problem3(alpha=1.0, beta=1.0):
    def f(x, y, t):
        s = 1.0 + x + y + t
        return 1.0 / s**2 + 2.0 * alpha / s + beta**2 * log(s)

    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=f,
        phi0=lambda x, y: log(1.0 + x + y),
        psi0=lambda x, y: 1.0 / (1.0 + x + y),
        bc=_edges(
            (DIRICHLET, lambda y, t: log(1.0 + y + t)),
            (NEUMANN, lambda y, t: 1.0 / (2.0 + y + t)),
            (NEUMANN, lambda x, t: 1.0 / (1.0 + x + t)),
            (DIRICHLET, lambda x, t: log(2.0 + x + t)),
        ),
        exact=lambda x, y, t: log(1.0 + x + y + t),
        name="P3",
    )


def _problem4(alpha=1.0, beta=1.0):
    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=lambda x, y, t: ((1.0 + beta**2) * cos(t) - 2.0 * alpha * sin(t)) * sin(x) * sin(y),
        phi0=lambda x, y: sin(x) * sin(y),
        psi0=lambda x, y: 0.0 * x * y,
        bc=_edges(
            (DIRICHLET, lambda y, t: 0.0 * y),
            (DIRICHLET, lambda y, t: cos(t) * sin(1.0) * sin(y)),
            (DIRICHLET, lambda x, t: 0.0 * x),
            (DIRICHLET, lambda x, t: cos(t) * sin(x) * sin(1.0)),
        ),
        exact=lambda x, y, t: cos(t) * sin(x) * sin(y),
        name="P4",
    )


def _problem5(alpha=10.0, beta=5.0):
    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=lambda x, y, t: (-2.0 * alpha + beta**2 - 1.0) * exp(-t) * sinh(x) * sinh(y),
        phi0=lambda x, y: sinh(x) * sinh(y),
        psi0=lambda x, y: -sinh(x) * sinh(y),
        bc=_edges(
            (DIRICHLET, lambda y, t: 0.0 * y),
            (DIRICHLET, lambda y, t: exp(-t) * sinh(1.0) * sinh(y)),
            (DIRICHLET, lambda x, t: 0.0 * x),
            (DIRICHLET, lambda x, t: exp(-t) * sinh(x) * sinh(1.0)),
        ),
        exact=lambda x, y, t: exp(-t) * sinh(x) * sinh(y),
        name="P5",
    )


def _problem6(alpha=10.0, beta=5.0):
    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=lambda x, y, t: ((beta**2 - 3.0) * cos(t) - 2.0 * alpha * sin(t)) * sinh(x) * sinh(y),
        phi0=lambda x, y: sinh(x) * sinh(y),
        psi0=lambda x, y: 0.0 * x * y,
        bc=_edges(
            (DIRICHLET, lambda y, t: 0.0 * y),
            (DIRICHLET, lambda y, t: cos(t) * sinh(1.0) * sinh(y)),
            (DIRICHLET, lambda x, t: 0.0 * x),
            (DIRICHLET, lambda x, t: cos(t) * sinh(x) * sinh(1.0)),
        ),
        exact=lambda x, y, t: cos(t) * sinh(x) * sinh(y),
        name="P6",
    )


_FACTORIES = {1: _problem1, 2: _problem2, 3: _problem3, 4: _problem4, 5: _problem5, 6: _problem6}


def get_problem(pid: int, alpha: Optional[float] = None, beta: Optional[float] = None) -> TelegraphProblem:
    """Problem ``pid`` with its default coefficients, optionally overridden."""
    try:
        factory = _FACTORIES[int(pid)]
    except (KeyError, ValueError, TypeError):
        raise ValueError(f"unknown problem id {pid!r}; valid ids are {list(PROBLEM_IDS)}") from None
    kwargs = {}
    if alpha is not None:
        kwargs["alpha"] = float(alpha)
    if beta is not None:
        kwargs["beta"] = float(beta)
    return factory(**kwargs)


def problem_catalog() -> dict[int, TelegraphProblem]:
    return {pid: get_problem(pid) for pid in PROBLEM_IDS}


def run_benchmark(
    problem,
    grid: Grid2D,
    cfg: StepConfig,
    times: Sequence[float],
    w: Optional[WeightSet] = None,
) -> list[ErrorReport]:
    """Integrate once and report the error norms at each requested time.

    ``problem`` is a catalog id or a :class:`TelegraphProblem` with an exact
    solution. ``cfg.t_end`` is ignored in favour of ``max(times)``.
    """
    if not isinstance(problem, TelegraphProblem):
        problem = get_problem(problem)
    if problem.exact is None:
        raise ValueError("benchmarking needs a problem with an exact solution")
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("snapshot times must be sorted ascending")
    if not times:
        return []
    w = compute_weights(grid) if w is None else w
    run_cfg = StepConfig(dt=cfg.dt, t_end=times[-1], scheme=cfg.scheme)
    wanted = {}
    for t in times:
        wanted.setdefault(run_cfg.steps_to(t), []).append(t)

    X, Y = grid.mesh()
    h = grid.gx.h
    reports = []

    def snap(k, state):
        for t in wanted.get(k, ()):
            exact = problem.exact(X, Y, state.t)
            reports.append(
                error_norms(
                    state.u, exact, h,
                    t=t, grid=grid.label, dt=cfg.dt, scheme=run_cfg.scheme, problem=problem.name,
                )
            )

    integrate(initial_state(problem, grid), problem, grid, w, run_cfg, callback=snap)
    return reports


# Published MTB-DQM errors (L2, Linf, Re) used as reference magnitudes only.
# Keyed by (problem id, h, dt, scheme, extra params).
REFERENCE = {
    (4, 0.1, 0.01, "rk43", ()): {
        1: (4.0186e-06, 4.7532e-06, 2.6490e-05),
        2: (2.2235e-06, 3.6462e-06, 1.9030e-05),
        3: (6.0477e-06, 8.4966e-06, 2.1728e-05),
        5: (1.4659e-06, 2.2494e-06, 1.7805e-05),
        7: (4.7870e-06, 6.6079e-06, 2.2815e-05),
        10: (5.2716e-06, 7.3166e-06, 2.2524e-05),
    },
    (4, 0.1, 0.01, "rk54", ()): {
        1: (3.7238e-06, 4.5385e-06, 2.4548e-05),
        2: (4.4905e-06, 5.6389e-06, 3.8433e-05),
        3: (3.7914e-06, 6.3660e-06, 1.3621e-05),
        5: (4.4231e-06, 5.3967e-06, 5.3723e-05),
        7: (3.2083e-06, 3.7144e-06, 1.5291e-05),
        10: (3.1815e-06, 3.7741e-06, 1.3593e-05),
    },
    (1, 0.1, 0.01, "rk43", ()): {
        1: (4.5279e-04, 7.3999e-04, 3.7353e-04),
        2: (4.7152e-05, 1.1332e-04, 1.0574e-04),
        3: (4.5408e-05, 8.0118e-05, 2.7957e-04),
        5: (4.3519e-06, 8.9406e-06, 1.9798e-04),
        7: (4.7606e-07, 1.0625e-06, 1.6003e-04),
        10: (4.3364e-08, 7.5959e-08, 2.9278e-04),
    },
    (1, 0.05, 0.001, "rk43", ()): {
        0.5: (1.2998e-04, 2.6974e-04, 6.6047e-05),
        1: (1.0829e-04, 1.8630e-04, 9.0721e-05),
        2: (1.0524e-05, 3.0837e-05, 2.3990e-05),
        3: (1.1155e-05, 2.0822e-05, 6.9120e-05),
        5: (1.0364e-06, 2.4103e-06, 4.7404e-05),
    },
    (2, 0.1, 0.01, "rk43", ()): {
        1: (3.5177e-04, 4.5346e-04, None),
        2: (1.0853e-04, 1.4837e-04, None),
        3: (1.2187e-05, 1.5671e-05, None),
        5: (4.0448e-06, 5.6143e-06, None),
    },
    (3, 0.05, 0.001, "rk43", ()): {
        0.5: (4.8136e-05, 9.7584e-05, 5.2424e-05),
        1: (7.3094e-05, 1.0833e-04, 6.6578e-05),
        2: (2.9279e-05, 4.9102e-05, 2.1140e-05),
        3: (1.1806e-05, 2.0621e-05, 7.3411e-06),
    },
    (5, 0.1, 0.01, "rk43", (("alpha", 10.0), ("beta", 5.0))): {
        0.5: (4.4634e-06, 7.4933e-06, 1.6906e-05),
        1: (3.1263e-06, 4.9241e-06, 1.9523e-05),
        2: (1.2315e-06, 1.8734e-06, 2.0905e-05),
        3: (4.5449e-07, 6.8641e-07, 2.1183e-05),
        5: (6.1709e-08, 9.3030e-08, 2.1252e-05),
    },
    (6, 0.05, 0.001, "rk43", (("alpha", 10.0), ("beta", 5.0))): {
        0.5: (9.2007e-07, 1.6964e-06, 2.4906e-06),
        1: (7.0486e-07, 1.1533e-06, 3.0991e-06),
        2: (2.8961e-07, 6.3703e-07, 1.6496e-06),
    },
}
