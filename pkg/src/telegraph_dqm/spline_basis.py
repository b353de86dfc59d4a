"""Trigonometric cubic B-splines and the modified end-point basis.

The spline ``T_i`` lives on ``[x_i, x_{i+4})`` and is built from the factors

    p(x_k) = sin((x - x_k) / 2),    q(x_k) = sin((x_k - x) / 2)

scaled by ``1 / omega`` with ``omega = sin(h/2) sin(h) sin(3h/2)``. Writing
``zeta_{i+2} = T_i`` puts each spline's centre on a node, and the basis used
for the quadrature weights replaces the two outermost splines at each end by
the combinations

    psi_1 = zeta_1 + 2 zeta_0,          psi_2 = zeta_2 - zeta_0,
    psi_{n-1} = zeta_{n-1} - zeta_{n+1}, psi_n = zeta_n + 2 zeta_{n+1}.

Nodal derivative values are obtained by differentiating the closed-form
pieces (Leibniz rule on the triple products), never taken from a table, so
their signs are fixed by the formula itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import factorial, pi

import numpy as np

from .grid import Grid1D

__all__ = [
    "SplineTables",
    "ModifiedBasisMatrices",
    "eval_spline",
    "spline_constants",
    "modified_basis",
]

H_MAX = 2.0 * pi / 3.0

# Each piece is a sum of triple products of factors (sign, k) standing for
# sign * sin((s - k h) / 2), s = x - x_i.  p(x_{i+k}) -> (+1, k), q(x_{i+k}) -> (-1, k).
_P = lambda k: (1.0, k)  # noqa: E731
_Q = lambda k: (-1.0, k)  # noqa: E731

_PIECES = (
    ((_P(0), _P(0), _P(0)),),
    (
        (_P(0), _P(0), _Q(2)),
        (_P(0), _P(1), _Q(3)),
        (_P(1), _P(1), _Q(4)),
    ),
    (
        (_Q(4), _P(1), _Q(3)),
        (_Q(4), _P(2), _Q(4)),
        (_P(0), _Q(3), _Q(3)),
    ),
    ((_Q(4), _Q(4), _Q(4)),),
)


def _check_h(h):
    if not (0.0 < h < H_MAX):
        raise ValueError(f"spacing h={h!r} outside (0, 2*pi/3); omega degenerates")


def _factor(sign, k, s, h, d):
    return sign * 0.5**d * np.sin(0.5 * (s - k * h) + 0.5 * d * pi)


def _piece_value(terms, s, h, deriv):
    out = np.zeros_like(s)
    for term in terms:
        for ds in product(range(deriv + 1), repeat=3):
            if sum(ds) != deriv:
                continue
            coeff = factorial(deriv) / (factorial(ds[0]) * factorial(ds[1]) * factorial(ds[2]))
            val = coeff
            for (sign, k), d in zip(term, ds):
                val = val * _factor(sign, k, s, h, d)
            out += val
    return out


def eval_spline(i, x, h, deriv=0):
    """Evaluate the trigonometric cubic B-spline ``T_i`` or a derivative.

    Parameters
    ----------
    i : int
        Basis index; the support starts at ``x_i = i * h``.
    x : float or array_like
        Evaluation points.
    h : float
        Uniform spacing, ``0 < h < 2*pi/3``.
    deriv : {0, 1, 2}
        Derivative order.

    Returns
    -------
    float or ndarray
        Zero outside ``[x_i, x_{i+4})``.
    """
    _check_h(h)
    if deriv not in (0, 1, 2):
        raise ValueError(f"deriv must be 0, 1 or 2, got {deriv}")
    omega = np.sin(0.5 * h) * np.sin(h) * np.sin(1.5 * h)
    x_arr = np.asarray(x, dtype=float)
    s = np.atleast_1d(x_arr - i * h)
    out = np.zeros_like(s)
    for m, terms in enumerate(_PIECES):
        mask = (s >= m * h) & (s < (m + 1) * h)
        if np.any(mask):
            out[mask] = _piece_value(terms, s[mask], h, deriv)
    out /= omega
    if x_arr.ndim == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class SplineTables:
    """Nodal constants of ``zeta_i`` on a uniform grid of spacing ``h``.

    The ``*_row`` stencils hold ``zeta_c`` and its derivatives at the nodes
    ``x_{c-1}, x_c, x_{c+1}``; the first derivative is ``(a3, 0, -a3)`` and
    the second ``(a4, -a5, a4)``.
    """

    h: float
    omega: float
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    value_row: tuple = field(repr=False)
    d1_row: tuple = field(repr=False)
    d2_row: tuple = field(repr=False)


@lru_cache(maxsize=64)
def spline_constants(h: float) -> SplineTables:
    """Closed-form constants a1..a5 and the differentiated nodal stencils.

    The stencils come from :func:`eval_spline`; the closed forms are used
    only as magnitude cross-checks.
    """
    h = float(h)
    _check_h(h)
    sh2, sh, s3h2 = np.sin(0.5 * h), np.sin(h), np.sin(1.5 * h)
    denominators = {
        "omega": sh2 * sh * s3h2,
        "a1": sh * s3h2,
        "a2": 1.0 + 2.0 * np.cos(h),
        "a3": 4.0 * s3h2,
        "a4": 16.0 * sh2**2 * (2.0 * np.cos(0.5 * h) + np.cos(1.5 * h)),
        "a5": sh2**2 * (2.0 + 4.0 * np.cos(h)),
    }
    for name, den in denominators.items():
        if abs(den) < 1e-14:
            raise ValueError(f"denominator of {name} vanishes at h={h!r}")

    a1 = sh2**2 / denominators["a1"]
    a2 = 2.0 / denominators["a2"]
    a3 = 3.0 / denominators["a3"]
    a4 = (3.0 + 9.0 * np.cos(h)) / denominators["a4"]
    a5 = 3.0 * np.cos(0.5 * h) ** 2 / denominators["a5"]

    nodes = np.array([1.0, 2.0, 3.0]) * h
    v0, d1, d2 = (eval_spline(0, nodes, h, k) for k in range(3))
    # symmetrise so the end-point modifications cancel exactly
    value_row = (0.5 * (v0[0] + v0[2]), float(v0[1]), 0.5 * (v0[0] + v0[2]))
    d1_row = (0.5 * (d1[0] - d1[2]), 0.0, -0.5 * (d1[0] - d1[2]))
    d2_row = (0.5 * (d2[0] + d2[2]), float(d2[1]), 0.5 * (d2[0] + d2[2]))
    value_row, d1_row, d2_row = (tuple(float(v) for v in r) for r in (value_row, d1_row, d2_row))

    for got, want, label in (
        (value_row[0], a1, "a1"),
        (value_row[1], a2, "a2"),
        (abs(d1_row[0]), a3, "a3"),
        (abs(d2_row[0]), a4, "a4"),
        (abs(d2_row[1]), a5, "a5"),
    ):
        if abs(got - want) > 1e-8 * abs(want):
            raise RuntimeError(f"nodal {label} disagrees with its closed form: {got!r} vs {want!r}")

    return SplineTables(
        h=h,
        omega=float(denominators["omega"]),
        a1=float(a1),
        a2=float(a2),
        a3=float(a3),
        a4=float(a4),
        a5=float(a5),
        value_row=value_row,
        d1_row=d1_row,
        d2_row=d2_row,
    )


@dataclass(frozen=True)
class ModifiedBasisMatrices:
    """``psi[p, l] = psi_p(x_l)``, likewise for the two derivatives."""

    psi: np.ndarray
    psi_d1: np.ndarray
    psi_d2: np.ndarray
    tables: SplineTables


def _modification(n):
    # rows: psi_0..psi_{n-1}; columns: zeta_{-1}..zeta_n (zero-based centres)
    c = np.zeros((n, n + 2))
    c[:, 1:-1] = np.eye(n)
    c[0, 0] += 2.0
    c[1, 0] -= 1.0
    c[n - 2, -1] -= 1.0
    c[n - 1, -1] += 2.0
    return c


def _nodal_matrix(row, n):
    # z[k, j] = zeta_{k-1}(x_j)
    z = np.zeros((n + 2, n))
    for j in range(n):
        z[j, j] = row[2]
        z[j + 1, j] = row[1]
        z[j + 2, j] = row[0]
    return z


def modified_basis(grid1d: Grid1D) -> ModifiedBasisMatrices:
    tables = spline_constants(grid1d.h)
    c = _modification(grid1d.n)
    mats = [c @ _nodal_matrix(row, grid1d.n) for row in (tables.value_row, tables.d1_row, tables.d2_row)]
    for m in mats:
        m.setflags(write=False)
    return ModifiedBasisMatrices(psi=mats[0], psi_d1=mats[1], psi_d2=mats[2], tables=tables)
