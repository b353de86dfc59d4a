"""Solve the all-Dirichlet test case u = cos t sin x sin y and watch the error.

Run with ``python3 demos/02_solve_problem4.py``.
"""

import numpy as np

from telegraph_dqm import StepConfig, compute_weights, get_problem, initial_state, integrate, make_grid
from telegraph_dqm.benchmarks import error_norms

problem = get_problem(4)  # alpha = beta = 1
grid = make_grid(11, 11)
w = compute_weights(grid)
X, Y = grid.mesh()

# Snapshot the error along the way; one integration per scheme.
for scheme in ("rk43", "rk54"):
    print(f"\n{scheme}: h=0.1, dt=0.01")
    print("   t        L2          Linf        Re")

    def show(k, state):
        if k % 100 == 0 and k > 0:
            r = error_norms(state.u, problem.exact(X, Y, state.t), grid.gx.h)
            print(f"{state.t:5.1f}  {r.L2:10.3e}  {r.Linf:10.3e}  {r.Re:10.3e}")

    integrate(initial_state(problem, grid), problem, grid, w, StepConfig(0.01, 5.0, scheme), callback=show)

# Refining the grid at a small time step isolates the spatial error.
print("\nspatial refinement, dt=0.001, t=1")
for n in (6, 11, 21):
    g = make_grid(n, n)
    s = integrate(initial_state(problem, g), problem, g, compute_weights(g), StepConfig(0.001, 1.0))
    Xg, Yg = g.mesh()
    err = np.max(np.abs(s.u - problem.exact(Xg, Yg, 1.0)))
    print(f"  h={g.gx.h:.3f}  Linf={err:.3e}")
