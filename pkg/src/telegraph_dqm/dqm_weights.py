"""Differential-quadrature weighting coefficients.

First-order weights ``A`` satisfy ``Psi @ A.T = Psi'`` for the modified
trigonometric basis; ``Psi`` is tridiagonal so each column is a Thomas
solve. Second-order weights follow from the recursion

    a2[i, j] = 2 * (a1[i, j] * a1[i, i] - a1[i, j] / (x_i - x_j)),  i != j
    a2[i, i] = -sum_{j != i} a2[i, j]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import fsum

import numpy as np

from .grid import Grid1D, Grid2D, make_grid1d
from .spline_basis import ModifiedBasisMatrices, modified_basis

__all__ = [
    "SingularSystemError",
    "TridiagonalSystem",
    "WeightSet",
    "thomas_solve",
    "tridiagonal_system",
    "first_order_weights",
    "higher_order_weights",
    "line_weights",
    "compute_weights",
    "exactness_residual",
]

PIVOT_TOL = 1e-14


class SingularSystemError(ArithmeticError):
    """A zero pivot showed up during the forward sweep."""

    def __init__(self, row, pivot):
        super().__init__(f"zero pivot {pivot!r} at row {row}")
        self.row = row
        self.pivot = pivot


@dataclass(frozen=True)
class TridiagonalSystem:
    """Bands of an n x n tridiagonal matrix plus right-hand side(s).

    ``sub[i]`` multiplies ``x[i]`` in row ``i + 1`` and ``sup[i]`` multiplies
    ``x[i + 1]`` in row ``i``; both have length ``n - 1``. ``rhs`` may be a
    vector or an ``(n, k)`` block of columns.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError("sub and sup bands must have length n - 1")
        if np.shape(self.rhs)[0] != n:
            raise ValueError("rhs length does not match the matrix size")

    @property
    def n(self) -> int:
        return len(self.diag)

    def is_diagonally_dominant(self) -> bool:
        off = np.zeros(self.n)
        off[1:] += np.abs(self.sub)
        off[:-1] += np.abs(self.sup)
        return bool(np.all(np.abs(self.diag) > off))

    def matmul(self, x):
        x = np.asarray(x, dtype=float)
        y = self.diag.reshape((-1,) + (1,) * (x.ndim - 1)) * x
        y[1:] += self.sub.reshape((-1,) + (1,) * (x.ndim - 1)) * x[:-1]
        y[:-1] += self.sup.reshape((-1,) + (1,) * (x.ndim - 1)) * x[1:]
        return y

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.sub, -1) + np.diag(self.sup, 1)


def thomas_solve(sys: TridiagonalSystem) -> np.ndarray:
    """Solve a tridiagonal system by forward elimination and back substitution.

    Works column-wise when ``sys.rhs`` is two-dimensional. No pivoting is
    done, so the matrix should be diagonally dominant (or otherwise safe for
    Gaussian elimination without row swaps).

    Raises
    ------
    SingularSystemError
        If a pivot smaller than ``1e-14`` in magnitude is met.
    """
    a = np.asarray(sys.sub, dtype=float)
    b = np.asarray(sys.diag, dtype=float)
    c = np.asarray(sys.sup, dtype=float)
    d = np.array(sys.rhs, dtype=float)
    n = len(b)

    cp = np.empty(max(n - 1, 0))
    dp = np.empty_like(d)

    pivot = b[0]
    if abs(pivot) < PIVOT_TOL:
        raise SingularSystemError(0, pivot)
    if n > 1:
        cp[0] = c[0] / pivot
    dp[0] = d[0] / pivot
    for i in range(1, n):
        pivot = b[i] - a[i - 1] * cp[i - 1]
        if abs(pivot) < PIVOT_TOL:
            raise SingularSystemError(i, pivot)
        if i < n - 1:
            cp[i] = c[i] / pivot
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / pivot

    x = dp
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def tridiagonal_system(matrix, rhs) -> TridiagonalSystem:
    """Pull the three bands out of a dense matrix, refusing anything wider."""
    m = np.asarray(matrix, dtype=float)
    outside = np.triu(m, 2) + np.tril(m, -2)
    if np.any(outside != 0.0):
        raise ValueError("matrix has entries outside the tridiagonal band")
    return TridiagonalSystem(
        sub=np.diag(m, -1).copy(),
        diag=np.diag(m).copy(),
        sup=np.diag(m, 1).copy(),
        rhs=np.asarray(rhs, dtype=float),
    )


def first_order_weights(basis: ModifiedBasisMatrices) -> np.ndarray:
    """First-derivative weights ``A`` with ``Psi @ A.T = Psi'``.

    Column ``i`` of ``Psi'`` holds ``psi_p'(x_i)`` for every basis function
    ``p``; its solve gives row ``i`` of ``A``.
    """
    sys = tridiagonal_system(basis.psi, basis.psi_d1)
    return thomas_solve(sys).T.copy()


def higher_order_weights(w1, grid1d: Grid1D, r: int = 2) -> np.ndarray:
    """Weights of order ``r`` from the first-order ones by the recursion.

    Only ``r = 2`` is needed downstream, but the recursion is applied
    repeatedly for larger ``r``.
    """
    if r < 2:
        raise ValueError(f"recursion order must be >= 2, got {r}")
    x = np.asarray(grid1d.nodes, dtype=float)
    dx = x[:, None] - x[None, :]
    off = ~np.eye(len(x), dtype=bool)
    if np.any(dx[off] == 0.0):
        raise ValueError("coincident grid coordinates")
    dx[~off] = 1.0

    w1 = np.asarray(w1, dtype=float)
    prev = w1
    for order in range(2, r + 1):
        cur = order * (w1 * np.diag(prev)[:, None] - prev / dx)
        np.fill_diagonal(cur, 0.0)
        np.fill_diagonal(cur, [-fsum(row) for row in cur])
        prev = cur
    return prev


@lru_cache(maxsize=32)
def line_weights(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached (first, second)-order weights for an ``n``-node grid line."""
    g = make_grid1d(n)
    w1 = first_order_weights(modified_basis(g))
    w2 = higher_order_weights(w1, g, 2)
    w1.setflags(write=False)
    w2.setflags(write=False)
    return w1, w2


@dataclass(frozen=True)
class WeightSet:
    a1w: np.ndarray
    a2w: np.ndarray
    b1w: np.ndarray
    b2w: np.ndarray


def compute_weights(grid: Grid2D) -> WeightSet:
    a1w, a2w = line_weights(grid.nx)
    b1w, b2w = line_weights(grid.ny)
    return WeightSet(a1w=a1w, a2w=a2w, b1w=b1w, b2w=b2w)


def exactness_residual(w1, basis: ModifiedBasisMatrices) -> float:
    """``max |sum_l w1[i, l] psi_p(x_l) - psi_p'(x_i)|`` over all ``p, i``."""
    return float(np.max(np.abs(basis.psi @ np.asarray(w1).T - basis.psi_d1)))
