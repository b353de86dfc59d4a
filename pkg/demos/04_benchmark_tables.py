"""Measured error norms next to the published reference values.

Run with ``python3 demos/04_benchmark_tables.py`` (about half a minute).
"""

from dataclasses import replace

from telegraph_dqm import StepConfig, get_problem, make_grid, run_benchmark
from telegraph_dqm.benchmarks import REFERENCE
from telegraph_dqm.boundary import DIRICHLET, EdgeSpec

for (pid, h, dt, scheme, extra), rows in REFERENCE.items():
    params = dict(extra)
    problem = get_problem(pid, **params)
    n = round(1 / h) + 1
    times = sorted(rows)
    reps = run_benchmark(problem, make_grid(n, n), StepConfig(dt, max(times), scheme), times)
    label = ", ".join(f"{k}={v:g}" for k, v in params.items())
    print(f"\nP{pid} h={h} dt={dt} {scheme} {label}")
    print("   t     Linf measured  Linf published   ratio")
    for r in reps:
        ref = rows[r.t][1]
        print(f"{r.t:5g}   {r.Linf:12.3e}   {ref:12.3e}   {r.Linf / ref:7.1f}")

# Problem 1 carries a Neumann edge at y = 0. The boundary row of the
# first-order weights is only first-order accurate when u'' != 0 there, so
# that edge dominates the error. Supplying the same edge as Dirichlet data
# shows how much of the error the closure accounts for.
p1 = get_problem(1)
as_dirichlet = replace(p1, bc=replace(p1.bc, y_lo=EdgeSpec(DIRICHLET, lambda x, t: p1.exact(x, 0.0, t))), name="P1-dirichlet")
print("\nProblem 1 at t=1, h=0.1, dt=0.01")
for p in (p1, as_dirichlet):
    (r,) = run_benchmark(p, make_grid(11, 11), StepConfig(0.01, 1.0), [1.0])
    print(f"  {p.name:13s} Linf={r.Linf:.3e}")
