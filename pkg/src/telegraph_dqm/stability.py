"""Spectral stability of the semi-discrete telegraph system.

Stacking interior unknowns row-major (``u[i, j]`` with ``j`` fastest), the
system is ``dU/dt = A U + G`` with

    A = [[0, I], [B, -2 alpha I]],   B = -beta^2 I + Bx + By,
    Bx = A2 (x) I,                   By = I (x) B2,

where ``A2``/``B2`` are the interior blocks of the second-order weights. An
eigenpair of ``A`` gives ``lambda_B = lambda_A (lambda_A + 2 alpha)`` for
some eigenvalue of ``B``, and ``B`` is a Kronecker sum so its spectrum is
``-beta^2 + lambda_x + lambda_y``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .dqm_weights import WeightSet
from .grid import Grid2D
from .ssprk import amplification, get_scheme

__all__ = [
    "NumericalFailure",
    "SystemMatrices",
    "SpectrumReport",
    "StabilityResult",
    "assemble_blocks",
    "system_matrix",
    "forcing_vector",
    "dense_spectrum",
    "lambda_A_from_B",
    "half_disk_radius",
    "stability_report",
    "write_spectrum",
]

IMAG_TOL = 1e-6
CROSS_CHECK_MAX_N = 21


class NumericalFailure(ArithmeticError):
    """The eigenvalue computation did not converge or failed validation."""


@dataclass(frozen=True)
class SystemMatrices:
    Bx: np.ndarray = field(repr=False)
    By: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    interior_Ax2: np.ndarray = field(repr=False)
    interior_By2: np.ndarray = field(repr=False)
    beta: float = 0.0


def assemble_blocks(w: WeightSet, grid: Grid2D, beta: float) -> SystemMatrices:
    ax2 = np.array(w.a2w[1:-1, 1:-1])
    by2 = np.array(w.b2w[1:-1, 1:-1])
    ix = np.eye(grid.nx - 2)
    iy = np.eye(grid.ny - 2)
    Bx = np.kron(ax2, iy)
    By = np.kron(ix, by2)
    B = Bx + By - beta**2 * np.eye(Bx.shape[0])
    return SystemMatrices(Bx=Bx, By=By, B=B, interior_Ax2=ax2, interior_By2=by2, beta=float(beta))


def system_matrix(w: WeightSet, grid: Grid2D, alpha: float, beta: float) -> np.ndarray:
    """The full ``2M x 2M`` operator ``A`` acting on ``[u, v]`` interior vectors."""
    B = assemble_blocks(w, grid, beta).B
    m = B.shape[0]
    eye = np.eye(m)
    return np.block([[np.zeros((m, m)), eye], [B, -2.0 * alpha * eye]])


def forcing_vector(K) -> np.ndarray:
    K = np.asarray(K, dtype=float).ravel()
    return np.concatenate([np.zeros_like(K), K])


def dense_spectrum(m, validate: bool = True) -> np.ndarray:
    """All eigenvalues of a real square matrix (LAPACK ``geev``).

    With ``validate`` the eigenpair residuals ``|m v - lambda v|`` (unit
    ``v``) must stay below ``1e-8 * |m|``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return np.zeros(0, dtype=complex)
    try:
        if validate:
            lam, vecs = scipy.linalg.eig(m, check_finite=True)
        else:
            lam = scipy.linalg.eigvals(m, check_finite=True)
    except (scipy.linalg.LinAlgError, ValueError) as err:
        raise NumericalFailure(f"eigenvalue iteration failed for {m.shape[0]}x{m.shape[0]} matrix: {err}") from err
    if validate:
        norm = max(np.linalg.norm(m, 2), np.finfo(float).tiny)
        vecs = vecs / np.linalg.norm(vecs, axis=0)
        resid = np.linalg.norm(m @ vecs - vecs * lam, axis=0)
        worst = float(np.max(resid))
        if worst > 1e-8 * norm:
            raise NumericalFailure(f"eigenpair residual {worst:.3e} exceeds 1e-8 * |m| = {1e-8 * norm:.3e}")
    return lam


def lambda_A_from_B(lam_B, alpha: float) -> np.ndarray:
    """Both roots of ``l^2 + 2 alpha l - lambda_B = 0`` for each ``lambda_B``."""
    lam_B = np.asarray(lam_B, dtype=complex)
    disc = np.sqrt(alpha**2 + lam_B)
    return np.concatenate([-alpha + disc, -alpha - disc])


@lru_cache(maxsize=None)
def half_disk_radius(scheme: str, r_max: float = 6.0, dr: float = 1e-3) -> float:
    """Largest ``r`` with ``|R(z)| <= 1`` on the closed left half-disk ``|z| <= r``.

    Found by scanning semicircles of increasing radius; conservative in the
    sense that the whole half-disk, not just its boundary, lies in the
    stability region up to the returned radius.
    """
    sch = get_scheme(scheme)
    theta = np.linspace(0.5 * np.pi, 1.5 * np.pi, 1441)
    r = dr
    last = 0.0
    while r <= r_max:
        z = r * np.exp(1j * theta)
        if np.max(np.abs(amplification(sch, z))) > 1.0 + 1e-12:
            break
        last = r
        r += dr
    return last


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray = field(repr=False)
    max_real: float
    max_abs_imag: float
    label: str = ""

    @classmethod
    def of(cls, eigenvalues, label=""):
        ev = np.asarray(eigenvalues, dtype=complex)
        return cls(
            eigenvalues=ev,
            max_real=float(np.max(ev.real)) if ev.size else float("nan"),
            max_abs_imag=float(np.max(np.abs(ev.imag))) if ev.size else float("nan"),
            label=label,
        )


@dataclass(frozen=True)
class StabilityResult:
    lambda_x: SpectrumReport
    lambda_y: SpectrumReport
    lambda_B: SpectrumReport
    lambda_A: SpectrumReport
    passed: bool
    marginal: bool
    B_strictly_negative: bool
    root_residual: float
    cross_check_error: Optional[float] = None
    dt: Optional[float] = None
    scheme: Optional[str] = None
    max_z: Optional[float] = None
    region_radius: Optional[float] = None

    @property
    def dt_within_bound(self) -> Optional[bool]:
        if self.max_z is None:
            return None
        return self.max_z <= self.region_radius

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        parts = [
            f"grid={self.lambda_B.label}",
            verdict + (" (marginal)" if self.marginal else ""),
            f"max_re_lambda_B={self.lambda_B.max_real:.6e}",
            f"max_abs_im_lambda_B={self.lambda_B.max_abs_imag:.3e}",
            f"max_re_lambda_A={self.lambda_A.max_real:.6e}",
        ]
        if self.cross_check_error is not None:
            parts.append(f"dense_check={self.cross_check_error:.3e}")
        if self.max_z is not None:
            parts.append(
                f"{self.scheme}: max|lambda_A|dt={self.max_z:.4g} vs half-disk radius {self.region_radius:.4g}"
            )
        return " ".join(parts)


def _multiset_distance(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :]) / (1.0 + np.abs(a)[:, None])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols])) if a.size else 0.0


def stability_report(
    w: WeightSet,
    grid: Grid2D,
    alpha: float,
    beta: float,
    dt: Optional[float] = None,
    scheme: str = "rk43",
    cross_check: Optional[bool] = None,
) -> StabilityResult:
    """Spectra of ``B`` and ``A`` with a pass/fail verdict.

    Passes when every ``lambda_B`` has ``Re <= 0`` and
    ``|Im| <= 1e-6 (1 + |lambda_B|)`` and every ``lambda_A`` has ``Re <= 0``.
    ``cross_check`` (default: grids up to 21 nodes per side) also computes
    the dense spectrum of ``B`` and records the worst relative mismatch.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    ax2 = np.array(w.a2w[1:-1, 1:-1])
    by2 = np.array(w.b2w[1:-1, 1:-1])
    lam_x = dense_spectrum(ax2)
    lam_y = dense_spectrum(by2)
    lam_B = (-(beta**2) + lam_x[:, None] + lam_y[None, :]).ravel()

    if cross_check is None:
        cross_check = max(grid.nx, grid.ny) <= CROSS_CHECK_MAX_N
    cross_err = None
    if cross_check:
        dense = dense_spectrum(assemble_blocks(w, grid, beta).B, validate=False)
        cross_err = _multiset_distance(lam_B, dense)

    lam_A = lambda_A_from_B(lam_B, alpha)
    lam_B_rep = np.concatenate([lam_B, lam_B])
    root_res = float(np.max(np.abs(lam_A**2 + 2 * alpha * lam_A - lam_B_rep) / (1.0 + np.abs(lam_B_rep))))

    imag_ok = bool(np.all(np.abs(lam_B.imag) <= IMAG_TOL * (1.0 + np.abs(lam_B))))
    b_ok = bool(np.all(lam_B.real <= 0.0)) and imag_ok
    a_ok = bool(np.all(lam_A.real <= 1e-12 * (1.0 + np.abs(lam_A))))
    marginal = bool(np.any(np.abs(lam_B) <= 1e-12) or np.any(np.abs(lam_A.real) <= 1e-12 * (1.0 + np.abs(lam_A))))

    max_z = radius = None
    if dt is not None:
        max_z = float(np.max(np.abs(lam_A)) * dt)
        radius = half_disk_radius(get_scheme(scheme).name)

    return StabilityResult(
        lambda_x=SpectrumReport.of(lam_x, label=f"{grid.nx}"),
        lambda_y=SpectrumReport.of(lam_y, label=f"{grid.ny}"),
        lambda_B=SpectrumReport.of(lam_B, label=grid.label),
        lambda_A=SpectrumReport.of(lam_A, label=grid.label),
        passed=b_ok and a_ok,
        marginal=marginal,
        B_strictly_negative=bool(np.all(lam_B.real < 0.0)) and imag_ok,
        root_residual=root_res,
        cross_check_error=cross_err,
        dt=dt,
        scheme=get_scheme(scheme).name if dt is not None else None,
        max_z=max_z,
        region_radius=radius,
    )


def write_spectrum(result: StabilityResult, path, fmt: str = "csv") -> None:
    """Eigenvalue scatter data: one row per (grid, family, re, im)."""
    rows = []
    for family, rep in (
        ("lambda_x", result.lambda_x),
        ("lambda_y", result.lambda_y),
        ("lambda_B", result.lambda_B),
        ("lambda_A", result.lambda_A),
    ):
        for ev in rep.eigenvalues:
            rows.append({"grid": result.lambda_B.label, "family": family, "re": float(ev.real), "im": float(ev.imag)})
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(rows, fh, indent=1)
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["grid", "family", "re", "im"])
        for r in rows:
            writer.writerow([r["grid"], r["family"], f"{r['re']:.9e}", f"{r['im']:.9e}"])
