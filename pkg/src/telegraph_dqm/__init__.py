"""Modified trigonometric cubic B-spline differential quadrature for the 2D telegraph equation.

Typical use::

    from telegraph_dqm import make_grid, compute_weights, get_problem, StepConfig, run_benchmark

    grid = make_grid(11, 11)
    reports = run_benchmark(4, grid, StepConfig(dt=0.01, t_end=1.0), times=[0.5, 1.0])
"""

from .benchmarks import ErrorReport, PROBLEM_IDS, error_norms, get_problem, problem_catalog, run_benchmark
from .boundary import DIRICHLET, NEUMANN, BoundarySpec, EdgeSpec, apply_boundary
from .custom_problem import load_problem, problem_from_dict
from .dqm_weights import WeightSet, compute_weights, line_weights, thomas_solve
from .grid import Grid1D, Grid2D, make_grid, make_grid1d
from .spline_basis import eval_spline, modified_basis, spline_constants
from .ssprk import SSPRK43, SSPRK54, StepConfig, integrate, step
from .stability import stability_report
from .telegraph_rhs import State, TelegraphProblem, initial_state, rhs

__version__ = "0.1.0"

__all__ = [
    "BoundarySpec",
    "DIRICHLET",
    "EdgeSpec",
    "ErrorReport",
    "Grid1D",
    "Grid2D",
    "NEUMANN",
    "PROBLEM_IDS",
    "SSPRK43",
    "SSPRK54",
    "State",
    "StepConfig",
    "TelegraphProblem",
    "WeightSet",
    "apply_boundary",
    "compute_weights",
    "error_norms",
    "eval_spline",
    "get_problem",
    "initial_state",
    "integrate",
    "line_weights",
    "load_problem",
    "make_grid",
    "make_grid1d",
    "modified_basis",
    "problem_catalog",
    "problem_from_dict",
    "rhs",
    "run_benchmark",
    "spline_constants",
    "stability_report",
    "step",
    "thomas_solve",
]
