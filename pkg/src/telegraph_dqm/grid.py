"""Uniform tensor-product grids on the unit square."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Grid1D", "Grid2D", "make_grid", "make_grid1d"]


@dataclass(frozen=True)
class Grid1D:
    """Uniform partition of [0, 1] with ``n`` nodes."""

    n: int
    h: float
    nodes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.nodes.setflags(write=False)

    @property
    def interior(self) -> slice:
        return slice(1, self.n - 1)


@dataclass(frozen=True)
class Grid2D:
    gx: Grid1D
    gy: Grid1D

    @property
    def nx(self) -> int:
        return self.gx.n

    @property
    def ny(self) -> int:
        return self.gy.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.gx.n, self.gy.n)

    @property
    def size(self) -> int:
        return self.gx.n * self.gy.n

    @property
    def interior_shape(self) -> tuple[int, int]:
        return (self.gx.n - 2, self.gy.n - 2)

    @property
    def label(self) -> str:
        return f"{self.gx.n}x{self.gy.n}"

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays ``X[i, j] = x_i`` and ``Y[i, j] = y_j``."""
        return np.meshgrid(self.gx.nodes, self.gy.nodes, indexing="ij")


def make_grid1d(n: int) -> Grid1D:
    n = int(n)
    if n < 3:
        raise ValueError(f"a grid line needs at least 3 nodes, got {n}")
    h = 1.0 / (n - 1)
    nodes = np.arange(n) * h
    nodes[-1] = 1.0
    return Grid1D(n=n, h=h, nodes=nodes)


def make_grid(nx: int, ny: int) -> Grid2D:
    """Build the ``nx`` by ``ny`` uniform grid on [0, 1] x [0, 1].

    Node ``(i, j)`` sits at ``(i / (nx - 1), j / (ny - 1))``; indices are
    zero-based, so the interior is ``1..nx-2`` by ``1..ny-2``.
    """
    return Grid2D(make_grid1d(nx), make_grid1d(ny))
