"""Acceptance criteria, each checked at its stated tolerance and runtime.

Every test records one ``criterion N ...: PASS|FAIL`` line; the lines are
printed in the terminal summary of every pytest run.
"""

import time

import mpmath as mp
import numpy as np
import sympy as sp

from oracles import central_differences, dense_solve, error_norms_loop, spline_closed_form
from telegraph_dqm.benchmarks import PROBLEM_IDS, error_norms, get_problem, run_benchmark
from telegraph_dqm.boundary import DIRICHLET, apply_boundary
from telegraph_dqm.dqm_weights import (
    TridiagonalSystem,
    compute_weights,
    exactness_residual,
    line_weights,
    thomas_solve,
)
from telegraph_dqm.grid import make_grid, make_grid1d
from telegraph_dqm.spline_basis import modified_basis, spline_constants
from telegraph_dqm.ssprk import SSPRK43, StepConfig, amplification, step
from telegraph_dqm.stability import forcing_vector, stability_report, system_matrix
from telegraph_dqm.telegraph_rhs import State, assemble_K, rhs

EPS = np.finfo(float).eps


def record(log, number, title, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed <= limit
    verdict = "PASS" if ok and within else "FAIL"
    budget = "no time limit" if limit is None else f"of {limit:g}s"
    line = f"criterion {number} {title}: {verdict} ({detail}; {elapsed:.2f}s {budget})"
    print(line)
    log.append(line)
    return ok and within


def test_criterion_1_weight_exactness(acceptance_log):
    line_weights.cache_clear()
    spline_constants.cache_clear()
    start = time.perf_counter()
    worst_res, worst_sum = 0.0, 0.0
    for n in (11, 21, 31, 41):
        basis = modified_basis(make_grid1d(n))
        w1, w2 = line_weights(n)
        worst_res = max(worst_res, exactness_residual(w1, basis))
        # row sums measured against 4 eps n times the row's largest entry
        ratio = np.abs(w2.sum(axis=1)) / (4 * EPS * n * np.max(np.abs(w2), axis=1))
        worst_sum = max(worst_sum, float(np.max(ratio)))
    elapsed = time.perf_counter() - start
    ok = worst_res <= 1e-10 and worst_sum <= 1.0
    detail = f"max residual {worst_res:.2e} <= 1e-10; worst row sum {worst_sum:.3f} of 4*eps*n*max|row|"
    assert record(acceptance_log, 1, "weight exactness", ok, detail, elapsed, 1.0)


def test_criterion_2_spline_oracle(acceptance_log):
    spline_constants.cache_clear()
    start = time.perf_counter()
    worst = 0.0
    for h in (0.1, 0.05, 0.025):
        tab = spline_constants(h)
        with mp.workdps(50):
            step_ = mp.mpf(h) * mp.mpf("1e-9")
            fd = [central_differences(lambda x: spline_closed_form(0, x, h), k * mp.mpf(h), step_) for k in (1, 2, 3)]
        expected = {
            "a1": (float(fd[0][0]), tab.a1),
            "a2": (float(fd[1][0]), tab.a2),
            "a3": (float(fd[0][1]), tab.a3),
            "-a3": (float(fd[2][1]), -tab.a3),
            "a4": (float(fd[0][2]), tab.a4),
            "-a5": (float(fd[1][2]), -tab.a5),
        }
        for ref, ours in expected.values():
            worst = max(worst, abs(ours - ref) / abs(ref))
        # the centre first derivative must vanish
        worst = max(worst, abs(float(fd[1][1])) / tab.a3)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6
    assert record(acceptance_log, 2, "spline oracle", ok, f"worst relative mismatch {worst:.2e} <= 1e-6", elapsed, 1.0)


def _decay_order(scheme):
    errs = []
    for n in (10, 20, 40):
        y, dt = np.array([1.0]), 1.0 / n
        for k in range(n):
            y = step(scheme, y, k * dt, dt, lambda t, y: -y)
        errs.append(abs(y[0] - np.exp(-1.0)))
    return float(np.log2(errs[1] / errs[2]))


def test_criterion_3_integrator_orders(acceptance_log):
    start = time.perf_counter()
    p43, p54 = _decay_order("rk43"), _decay_order("rk54")
    rng = np.random.default_rng(3)
    z = rng.uniform(0, 1, 20) * np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
    amp_err = float(np.max(np.abs(amplification(SSPRK43, z) - (1 + z + z**2 / 2 + z**3 / 6 + z**4 / 48))))
    elapsed = time.perf_counter() - start
    ok = p43 >= 2.9 and p54 >= 3.9 and amp_err <= 1e-12
    detail = f"rk43 order {p43:.3f} >= 2.9; rk54 order {p54:.3f} >= 3.9; amplification error {amp_err:.1e} <= 1e-12"
    assert record(acceptance_log, 3, "integrator orders", ok, detail, elapsed, 1.0)


def test_criterion_4_stability(acceptance_log):
    start = time.perf_counter()
    parts, ok = [], True
    for n in (11, 21, 31, 41):
        g = make_grid(n, n)
        r = stability_report(compute_weights(g), g, 1.0, 1.0)
        lam_b = r.lambda_B.eigenvalues
        good = (
            bool(np.all(lam_b.real < 0))
            and bool(np.all(np.abs(lam_b.imag) <= 1e-6 * (1 + np.abs(lam_b))))
            and bool(np.all(r.lambda_A.eigenvalues.real <= 0))
            and (r.cross_check_error is None or r.cross_check_error <= 1e-6)
        )
        if n <= 21:
            good = good and r.cross_check_error is not None
        ok = ok and good
        parts.append(f"{g.label} max Re(lambda_B) {r.lambda_B.max_real:.3f}")
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 4, "stability", ok, "; ".join(parts), elapsed, 30.0)


BANDS = [
    # (label, problem id, alpha, beta, required Linf cap, published Linf)
    ("P4", 4, None, None, 5e-3, 4.7532e-06),
    ("P1 mixed", 1, None, None, 1e-2, 7.3999e-04),
    ("P5 alpha=10 beta=5", 5, 10.0, 5.0, 1e-2, 4.9241e-06),
]


def test_criterion_5_benchmark_bands(acceptance_log):
    parts, ok, slowest = [], True, 0.0
    for label, pid, alpha, beta, cap, published in BANDS:
        start = time.perf_counter()
        (rep,) = run_benchmark(get_problem(pid, alpha, beta), make_grid(11, 11), StepConfig(0.01, 1.0, "rk43"), [1.0])
        took = time.perf_counter() - start
        slowest = max(slowest, took)
        required = rep.Linf <= cap and took <= 10.0
        stretch = rep.Linf <= 100 * published
        ok = ok and required
        parts.append(
            f"{label} Linf {rep.Linf:.3e} {'<=' if required else '>'} {cap:g}"
            f" [stretch {'met' if stretch else 'missed'}: {rep.Linf / published:.0f}x published]"
        )
    assert record(acceptance_log, 5, "benchmark bands", ok, "; ".join(parts), slowest, 10.0)


def test_criterion_6_convergence(acceptance_log):
    start = time.perf_counter()
    parts, ok = [], True
    for pid in (2, 4):
        errs = []
        for n in (11, 21):
            (rep,) = run_benchmark(pid, make_grid(n, n), StepConfig(0.001, 1.0), [1.0])
            errs.append(rep.Linf)
        ok = ok and errs[1] < errs[0]
        parts.append(f"P{pid} Linf {errs[0]:.3e} (h=0.1) -> {errs[1]:.3e} (h=0.05)")
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 6, "convergence", ok, "; ".join(parts), elapsed, 120.0)


_X, _Y, _T = sp.symbols("x y t")
_EXACT = {
    1: sp.exp(_X + _Y - _T),
    2: sp.exp(-_T) * sp.sin(sp.pi * _X) * sp.sin(sp.pi * _Y),
    3: sp.log(1 + _X + _Y + _T),
    4: sp.cos(_T) * sp.sin(_X) * sp.sin(_Y),
    5: sp.exp(-_T) * sp.sinh(_X) * sp.sinh(_Y),
    6: sp.cos(_T) * sp.sinh(_X) * sp.sinh(_Y),
}


def test_criterion_7_exact_solution_residuals(acceptance_log):
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    worst_pde, worst_edge = 0.0, 0.0
    for pid in PROBLEM_IDS:
        p = get_problem(pid)
        u = _EXACT[pid]
        uf = sp.lambdify((_X, _Y, _T), u, "numpy")
        dt1 = sp.lambdify((_X, _Y, _T), sp.diff(u, _T), "numpy")
        dt2 = sp.lambdify((_X, _Y, _T), sp.diff(u, _T, 2), "numpy")
        lap = sp.lambdify((_X, _Y, _T), sp.diff(u, _X, 2) + sp.diff(u, _Y, 2), "numpy")
        x, y, t = rng.uniform(0, 1, 100), rng.uniform(0, 1, 100), rng.uniform(0, 5, 100)
        res = dt2(x, y, t) + 2 * p.alpha * dt1(x, y, t) + p.beta**2 * uf(x, y, t) - lap(x, y, t) - p.f(x, y, t)
        worst_pde = max(worst_pde, float(np.max(np.abs(res))))
        worst_pde = max(worst_pde, float(np.max(np.abs(p.phi0(x, y) - uf(x, y, 0.0)))))
        worst_pde = max(worst_pde, float(np.max(np.abs(p.psi0(x, y) - dt1(x, y, 0.0)))))
        s, te = rng.uniform(0, 1, 100), rng.uniform(0, 5, 100)
        for name, fixed, value, free in (("x_lo", _X, 0, _Y), ("x_hi", _X, 1, _Y), ("y_lo", _Y, 0, _X), ("y_hi", _Y, 1, _X)):
            edge = getattr(p.bc, name)
            expr = u if edge.kind == DIRICHLET else sp.diff(u, fixed)
            ref = sp.lambdify((free, _T), expr.subs(fixed, value), "numpy")
            worst_edge = max(worst_edge, float(np.max(np.abs(edge(s, te) - ref(s, te)))))
    elapsed = time.perf_counter() - start
    ok = worst_pde <= 1e-10 and worst_edge <= 1e-10
    detail = f"PDE/initial residual {worst_pde:.1e}, edge trace residual {worst_edge:.1e}, both <= 1e-10"
    assert record(acceptance_log, 7, "exact-solution residuals", ok, detail, elapsed, 1.0)


def test_criterion_8_oracle_equivalence(acceptance_log):
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    worst_rhs = 0.0
    for pid in PROBLEM_IDS:
        for n in (5, 8, 11):
            g = make_grid(n, n)
            w = compute_weights(g)
            p = get_problem(pid)
            u = apply_boundary(rng.normal(size=g.shape), p.bc, w, g, 0.4)
            v = rng.normal(size=g.shape)
            du, dv = rhs(State(u, v, 0.4), p, g, w)
            U = np.concatenate([u[1:-1, 1:-1].ravel(), v[1:-1, 1:-1].ravel()])
            ref = system_matrix(w, g, p.alpha, p.beta) @ U + forcing_vector(assemble_K(u, p, g, w, 0.4))
            got = np.concatenate([du.ravel(), dv.ravel()])
            worst_rhs = max(worst_rhs, float(np.max(np.abs(got - ref) / (1 + np.abs(ref)))))

    worst_norm = 0.0
    for _ in range(50):
        a, b = rng.normal(size=(5, 5)), rng.normal(size=(5, 5))
        r = error_norms(a, b, 0.25)
        ref = error_norms_loop(a, b, 0.25)
        worst_norm = max(worst_norm, abs(r.L2 - ref[0]), abs(r.Linf - ref[1]), abs(r.Re - ref[2]))

    worst_thomas = 0.0
    for _ in range(1000):
        n = int(rng.integers(3, 51))
        sub, sup = rng.uniform(-1, 1, n - 1), rng.uniform(-1, 1, n - 1)
        off = np.zeros(n)
        off[1:] += np.abs(sub)
        off[:-1] += np.abs(sup)
        diag = (off + rng.uniform(0.1, 2.0, n)) * rng.choice([-1, 1], n)
        sys_ = TridiagonalSystem(sub, diag, sup, rng.normal(size=n))
        ref = dense_solve(sys_.dense(), sys_.rhs)
        worst_thomas = max(worst_thomas, float(np.max(np.abs(thomas_solve(sys_) - ref)) / max(1.0, np.max(np.abs(ref)))))
    elapsed = time.perf_counter() - start
    ok = worst_rhs <= 1e-12 and worst_norm <= 1e-14 and worst_thomas <= 1e-12
    detail = (f"rhs vs A*U+G {worst_rhs:.1e} <= 1e-12; norms vs loops {worst_norm:.1e} <= 1e-14; "
              f"Thomas vs dense {worst_thomas:.1e} <= 1e-12")
    assert record(acceptance_log, 8, "oracle equivalence", ok, detail, elapsed)
