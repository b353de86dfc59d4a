"""Boundary closures for the four edges of the unit square.

Dirichlet edges are read from their data. Neumann edges are recovered from
the first-order quadrature row at that edge: with ``A`` the x-direction
first-order weights and interior values ``u[1:-1, j]``

    A[0, 0] u[0, j]  + A[0, -1] u[-1, j]  = g_lo(y_j) - A[0, 1:-1]  @ u[1:-1, j]
    A[-1, 0] u[0, j] + A[-1, -1] u[-1, j] = g_hi(y_j) - A[-1, 1:-1] @ u[1:-1, j]

which is solved as a 2x2 system when both x-edges are Neumann, and as a
single scalar equation when the opposite edge is Dirichlet. The y-direction
is the mirror image with the ``b`` weights.

Order of evaluation: x-edges on interior ``j`` first, then y-edges for every
``i`` (the corner columns use the freshly closed x-edge values), and finally
a corner is overwritten by the x-edge trace whenever that x-edge is
Dirichlet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .dqm_weights import WeightSet
from .grid import Grid2D

__all__ = [
    "DIRICHLET",
    "NEUMANN",
    "ClosureError",
    "EdgeSpec",
    "BoundarySpec",
    "neumann_sums",
    "close_boundary_x",
    "close_boundary_y",
    "apply_boundary",
]

DIRICHLET = "dirichlet"
NEUMANN = "neumann"

DET_TOL = 1e-12


class ClosureError(ArithmeticError):
    """The Neumann closure system is (numerically) singular."""


@dataclass(frozen=True)
class EdgeSpec:
    """Condition on one edge.

    ``data(s, t)`` is evaluated at the edge coordinate ``s`` (``y`` on the
    x-edges, ``x`` on the y-edges). For Neumann edges it returns the
    coordinate derivative ``du/dx`` or ``du/dy``, not the outward normal one.
    """

    kind: Literal["dirichlet", "neumann"]
    data: Callable

    def __post_init__(self):
        if self.kind not in (DIRICHLET, NEUMANN):
            raise ValueError(f"unknown edge kind {self.kind!r}")

    def __call__(self, s, t):
        return np.broadcast_to(np.asarray(self.data(s, t), dtype=float), np.shape(s))


@dataclass(frozen=True)
class BoundarySpec:
    x_lo: EdgeSpec
    x_hi: EdgeSpec
    y_lo: EdgeSpec
    y_hi: EdgeSpec

    @property
    def kinds(self) -> tuple[str, str, str, str]:
        return (self.x_lo.kind, self.x_hi.kind, self.y_lo.kind, self.y_hi.kind)

    @property
    def all_dirichlet(self) -> bool:
        return all(k == DIRICHLET for k in self.kinds)


def neumann_sums(lines, w1, g_lo, g_hi):
    """Right-hand sides ``S_lo, S_hi`` of the edge quadrature rows.

    ``lines`` has one grid line per row (shape ``(m, n)``); only the interior
    columns ``1..n-2`` are used.
    """
    inner = lines[:, 1:-1]
    s_lo = g_lo - inner @ w1[0, 1:-1]
    s_hi = g_hi - inner @ w1[-1, 1:-1]
    return s_lo, s_hi


def _close_lines(lines, w1, lo: EdgeSpec, hi: EdgeSpec, s, t):
    """Edge values for a stack of grid lines running across the closure direction."""
    g_lo = lo(s, t)
    g_hi = hi(s, t)
    if lo.kind == DIRICHLET and hi.kind == DIRICHLET:
        return g_lo.copy(), g_hi.copy()

    s_lo, s_hi = neumann_sums(lines, w1, g_lo, g_hi)
    a00, a0n, an0, ann = w1[0, 0], w1[0, -1], w1[-1, 0], w1[-1, -1]

    if lo.kind == NEUMANN and hi.kind == NEUMANN:
        det = a00 * ann - an0 * a0n
        if abs(det) < DET_TOL:
            raise ClosureError(f"Neumann closure determinant {det!r} is singular")
        u_lo = (s_lo * ann - s_hi * a0n) / det
        u_hi = (s_hi * a00 - s_lo * an0) / det
        return u_lo, u_hi

    if lo.kind == NEUMANN:
        if abs(a00) < DET_TOL:
            raise ClosureError(f"Neumann closure pivot {a00!r} is singular")
        u_hi = g_hi.copy()
        return (s_lo - a0n * u_hi) / a00, u_hi

    if abs(ann) < DET_TOL:
        raise ClosureError(f"Neumann closure pivot {ann!r} is singular")
    u_lo = g_lo.copy()
    return u_lo, (s_hi - an0 * u_lo) / ann


def close_boundary_x(u, spec: BoundarySpec, w: WeightSet, grid: Grid2D, t: float):
    """Values on the x = 0 and x = 1 edges for every ``j``.

    Only ``u[1:-1, :]`` is read. Entries at the corner rows ``j = 0`` and
    ``j = ny - 1`` depend on the y-edge entries of ``u`` and are normally
    replaced by :func:`apply_boundary`.
    """
    u = np.asarray(u, dtype=float)
    return _close_lines(u.T, w.a1w, spec.x_lo, spec.x_hi, grid.gy.nodes, t)


def close_boundary_y(u, spec: BoundarySpec, w: WeightSet, grid: Grid2D, t: float):
    """Values on the y = 0 and y = 1 edges for every ``i``; reads ``u[:, 1:-1]``."""
    u = np.asarray(u, dtype=float)
    return _close_lines(u, w.b1w, spec.y_lo, spec.y_hi, grid.gx.nodes, t)


def apply_boundary(u, spec: BoundarySpec, w: WeightSet, grid: Grid2D, t: float, out=None):
    """Return ``u`` with all four edges closed at time ``t``.

    The interior is left untouched. Pass ``out=u`` to update in place.
    """
    u = np.asarray(u, dtype=float)
    if out is None:
        out = u.copy()
    elif out is not u:
        out[...] = u

    x_lo, x_hi = close_boundary_x(out, spec, w, grid, t)
    out[0, 1:-1] = x_lo[1:-1]
    out[-1, 1:-1] = x_hi[1:-1]

    y_lo, y_hi = close_boundary_y(out, spec, w, grid, t)
    out[:, 0] = y_lo
    out[:, -1] = y_hi

    if spec.x_lo.kind == DIRICHLET:
        out[0, 0], out[0, -1] = x_lo[0], x_lo[-1]
    if spec.x_hi.kind == DIRICHLET:
        out[-1, 0], out[-1, -1] = x_hi[0], x_hi[-1]
    return out
