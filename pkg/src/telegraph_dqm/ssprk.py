"""Strong-stability-preserving Runge-Kutta steppers in Shu-Osher form.

Stage ``k`` is ``y_k = sum_j alpha[k][j] y_j + dt * sum_j beta[k][j] L(t_j, y_j)``
with ``y_0`` the current solution and the last stage the new one. Stage
times ``t_j = t + c_j dt`` come from running the same table on ``y' = 1``,
so nothing about the abscissae is written down by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .dqm_weights import WeightSet
from .grid import Grid2D
from .telegraph_rhs import State, TelegraphProblem, telegraph_operator
from .boundary import apply_boundary

__all__ = [
    "Scheme",
    "SSPRK43",
    "SSPRK54",
    "SCHEMES",
    "IntegrationError",
    "StepConfig",
    "get_scheme",
    "stage_times",
    "step",
    "ssprk43_step",
    "ssprk54_step",
    "amplification",
    "integrate",
]


class IntegrationError(FloatingPointError):
    """A stage produced non-finite values."""

    def __init__(self, message, step=None, field_max=None):
        super().__init__(message)
        self.step = step
        self.field_max = field_max


@dataclass(frozen=True)
class Scheme:
    name: str
    order: int
    alpha: tuple
    beta: tuple

    @property
    def stages(self) -> int:
        return len(self.alpha)


SSPRK43 = Scheme(
    name="rk43",
    order=3,
    alpha=(
        {0: 1.0},
        {1: 1.0},
        {0: 2.0 / 3.0, 2: 1.0 / 3.0},
        {3: 1.0},
    ),
    beta=(
        {0: 0.5},
        {1: 0.5},
        {2: 1.0 / 6.0},
        {3: 0.5},
    ),
)

SSPRK54 = Scheme(
    name="rk54",
    order=4,
    alpha=(
        {0: 1.0},
        {0: 0.444370493651235, 1: 0.555629506348765},
        {0: 0.620101851488403, 2: 0.379898148511597},
        {0: 0.178079954393132, 3: 0.821920045606868},
        {2: 0.517231671970585, 3: 0.096059710526147, 4: 0.386708617503269},
    ),
    beta=(
        {0: 0.391752226571890},
        {1: 0.368410593050371},
        {2: 0.251891774271694},
        {3: 0.544974750228521},
        {3: 0.063692468666290, 4: 0.226007483236906},
    ),
)

SCHEMES = {s.name: s for s in (SSPRK43, SSPRK54)}


def get_scheme(scheme) -> Scheme:
    if isinstance(scheme, Scheme):
        return scheme
    try:
        return SCHEMES[str(scheme).lower()]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {sorted(SCHEMES)}") from None


@lru_cache(maxsize=None)
def _stage_times(scheme: str):
    sch = SCHEMES[scheme]
    c = [0.0]
    for a, b in zip(sch.alpha, sch.beta):
        c.append(sum(w * c[j] for j, w in a.items()) + sum(b.values()))
    return tuple(c)


def stage_times(scheme) -> np.ndarray:
    """Fractions ``c_j`` of ``dt`` at which stage ``j`` lives (``c_0 = 0``)."""
    return np.array(_stage_times(get_scheme(scheme).name))


def step(scheme, y, t: float, dt: float, L: Callable, *, index: Optional[int] = None):
    """Advance ``y`` from ``t`` to ``t + dt``.

    ``L(t, y)`` is evaluated at the propagated stage time of each stage
    value it is applied to.
    """
    sch = get_scheme(scheme)
    c = _stage_times(sch.name)
    ys = [y]
    Ls = {}
    for k, (a, b) in enumerate(zip(sch.alpha, sch.beta), start=1):
        new = None
        for j, w in a.items():
            new = w * ys[j] if new is None else new + w * ys[j]
        for j, w in b.items():
            if j not in Ls:
                Ls[j] = L(t + c[j] * dt, ys[j])
            new = new + (w * dt) * Ls[j]
        if not np.all(np.isfinite(new)):
            where = "" if index is None else f" in step {index}"
            raise IntegrationError(f"non-finite values at stage {k}{where}", step=index)
        ys.append(new)
    return ys[-1]


def ssprk43_step(y, t, dt, L):
    return step(SSPRK43, y, t, dt, L)


def ssprk54_step(y, t, dt, L):
    return step(SSPRK54, y, t, dt, L)


def amplification(scheme, z):
    """One-step growth factor ``R(z)`` on ``y' = lambda y`` with ``z = lambda dt``."""
    z = np.asarray(z, dtype=complex)
    return step(scheme, np.ones_like(z), 0.0, 1.0, lambda t, y: z * y)


@dataclass(frozen=True)
class StepConfig:
    dt: float
    t_end: float
    scheme: str = "rk43"

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if not self.t_end >= 0:
            raise ValueError(f"t_end must be non-negative, got {self.t_end!r}")
        get_scheme(self.scheme)
        self.steps_to(self.t_end)

    def steps_to(self, t: float) -> int:
        n = int(round(t / self.dt))
        if abs(t - n * self.dt) > 1e-12:
            raise ValueError(f"time {t!r} is not a whole number of steps of {self.dt!r}")
        return n

    @property
    def n_steps(self) -> int:
        return self.steps_to(self.t_end)


def integrate(
    state: State,
    problem: TelegraphProblem,
    grid: Grid2D,
    w: WeightSet,
    cfg: StepConfig,
    callback: Optional[Callable[[int, State], None]] = None,
) -> State:
    """March ``state`` from ``state.t`` to ``cfg.t_end`` in equal steps of ``cfg.dt``.

    ``callback(k, state)`` is invoked after every completed step ``k``
    (and with ``k = 0`` for the starting state); the state passed in is
    shared, so copy it if it must be kept.
    """
    L = telegraph_operator(problem, grid, w)
    scheme = get_scheme(cfg.scheme)
    t0 = state.t
    if cfg.t_end < t0:
        raise ValueError(f"t_end {cfg.t_end!r} lies before the state time {t0!r}")
    n_steps = cfg.steps_to(cfg.t_end - t0)
    Y = np.stack([state.u, state.v]).astype(float)
    current = State(Y[0], Y[1], t0)
    if callback is not None:
        callback(0, current)
    for k in range(1, n_steps + 1):
        t = t0 + (k - 1) * cfg.dt
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                Y = step(scheme, Y, t, cfg.dt, L, index=k)
        except IntegrationError as err:
            raise IntegrationError(
                f"{err} (last finite max |u| = {np.max(np.abs(current.u)):.3e})",
                step=k,
                field_max=float(np.max(np.abs(current.u))),
            ) from None
        t_new = t0 + k * cfg.dt
        apply_boundary(Y[0], problem.bc, w, grid, t_new, out=Y[0])
        current = State(Y[0], Y[1], t_new)
        if callback is not None:
            callback(k, current)
    return State(Y[0].copy(), Y[1].copy(), t0 + n_steps * cfg.dt)
