"""Semi-discrete telegraph system on the interior nodes.

With ``v = u_t`` the equation ``u_tt + 2 alpha u_t + beta^2 u = u_xx + u_yy + f``
becomes, at interior node ``(i, j)``,

    du/dt = v
    dv/dt = sum_l a2[i, l] u[l, j] + sum_l b2[j, l] u[i, l]
            - 2 alpha v - beta^2 u + K[i, j]

where both sums run over interior ``l`` only and ``K`` carries the forcing
plus the boundary columns of the second-order weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .boundary import BoundarySpec, apply_boundary
from .dqm_weights import WeightSet
from .grid import Grid2D

__all__ = [
    "InputDataError",
    "TelegraphProblem",
    "State",
    "initial_state",
    "assemble_K",
    "rhs",
    "telegraph_operator",
    "sample",
]


class InputDataError(ValueError):
    """Problem data produced a non-finite value on the grid."""


@dataclass(frozen=True)
class TelegraphProblem:
    """``u_tt + 2 alpha u_t + beta^2 u = u_xx + u_yy + f`` on the unit square.

    ``f(x, y, t)``, ``phi0(x, y)``, ``psi0(x, y)`` and ``exact(x, y, t)``
    must accept broadcastable numpy arrays.
    """

    alpha: float
    beta: float
    f: Callable
    phi0: Callable
    psi0: Callable
    bc: BoundarySpec
    exact: Optional[Callable] = None
    name: str = "custom"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"damping alpha must be positive, got {self.alpha!r}")


@dataclass
class State:
    """Full-grid fields at time ``t``.

    Boundary entries of ``u`` are kept consistent with the closure; boundary
    entries of ``v`` are not evolved.
    """

    u: np.ndarray
    v: np.ndarray
    t: float = 0.0

    def copy(self) -> "State":
        return State(self.u.copy(), self.v.copy(), self.t)


def sample(func, *coords, what="data"):
    """Evaluate ``func`` on grid coordinates, rejecting non-finite values."""
    shape = np.broadcast(*coords).shape
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(np.asarray(func(*coords), dtype=float), shape).copy()
    bad = ~np.isfinite(vals)
    if np.any(bad):
        idx = tuple(int(k) for k in np.argwhere(bad)[0])
        raise InputDataError(f"{what} is not finite at node {idx}")
    return vals


def initial_state(problem: TelegraphProblem, grid: Grid2D) -> State:
    X, Y = grid.mesh()
    u = sample(problem.phi0, X, Y, what="initial u")
    v = sample(problem.psi0, X, Y, what="initial u_t")
    return State(u=u, v=v, t=0.0)


def assemble_K(u, problem: TelegraphProblem, grid: Grid2D, w: WeightSet, t: float) -> np.ndarray:
    """Forcing plus boundary coupling on the interior, shape ``(nx-2, ny-2)``.

    ``u`` must already carry closed boundary values for time ``t``.
    """
    X, Y = grid.mesh()
    f = sample(problem.f, X[1:-1, 1:-1], Y[1:-1, 1:-1], t, what="forcing")
    a2, b2 = w.a2w, w.b2w
    K = f
    K += np.outer(a2[1:-1, 0], u[0, 1:-1]) + np.outer(a2[1:-1, -1], u[-1, 1:-1])
    K += np.outer(u[1:-1, 0], b2[1:-1, 0]) + np.outer(u[1:-1, -1], b2[1:-1, -1])
    return K


def rhs(state: State, problem: TelegraphProblem, grid: Grid2D, w: WeightSet):
    """Interior time derivatives ``(du, dv)`` for a state with closed boundary."""
    u, v = state.u, state.v
    ui, vi = u[1:-1, 1:-1], v[1:-1, 1:-1]
    lap = w.a2w[1:-1, 1:-1] @ ui + ui @ w.b2w[1:-1, 1:-1].T
    K = assemble_K(u, problem, grid, w, state.t)
    du = vi.copy()
    dv = lap - 2.0 * problem.alpha * vi - problem.beta**2 * ui + K
    return du, dv


def telegraph_operator(problem: TelegraphProblem, grid: Grid2D, w: WeightSet):
    """Right-hand side ``L(t, Y)`` on stacked full-grid fields ``Y = [u, v]``.

    The boundary of ``u`` is closed at ``t`` before the interior derivatives
    are formed; boundary rows of the result are zero.
    """

    def L(t, Y):
        u = apply_boundary(Y[0], problem.bc, w, grid, t)
        du, dv = rhs(State(u, Y[1], t), problem, grid, w)
        out = np.zeros_like(Y)
        out[0, 1:-1, 1:-1] = du
        out[1, 1:-1, 1:-1] = dv
        return out

    return L
