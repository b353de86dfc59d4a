import numpy as np
import pytest

from telegraph_dqm.benchmarks import get_problem
from telegraph_dqm.boundary import DIRICHLET, BoundarySpec, EdgeSpec, apply_boundary
from telegraph_dqm.dqm_weights import compute_weights
from telegraph_dqm.grid import make_grid
from telegraph_dqm.stability import forcing_vector, system_matrix
from telegraph_dqm.telegraph_rhs import (
    InputDataError,
    State,
    TelegraphProblem,
    assemble_K,
    initial_state,
    rhs,
    sample,
    telegraph_operator,
)

zero = EdgeSpec(DIRICHLET, lambda s, t: 0.0)
ZERO_BC = BoundarySpec(zero, zero, zero, zero)


def zero_problem(alpha=2.5, beta=0.7):
    return TelegraphProblem(alpha, beta, lambda x, y, t: 0 * x, lambda x, y: 0 * x, lambda x, y: 0 * x, ZERO_BC)


def test_initial_state_problem4(grid11):
    s = initial_state(get_problem(4), grid11)
    X, Y = grid11.mesh()
    assert np.allclose(s.u, np.sin(X) * np.sin(Y), rtol=0, atol=1e-15)
    assert np.all(s.v == 0.0) and s.t == 0.0


def test_initial_state_problem1(grid11):
    s = initial_state(get_problem(1), grid11)
    X, Y = grid11.mesh()
    assert np.allclose(s.v, -np.exp(X + Y), rtol=1e-15)


def test_zero_data_zero_state(grid11):
    s = initial_state(zero_problem(), grid11)
    assert not s.u.any() and not s.v.any()


def test_zero_problem_has_zero_K_and_rhs(grid11, w11):
    p = zero_problem()
    assert not assemble_K(np.zeros(grid11.shape), p, grid11, w11, 0.4).any()
    du, dv = rhs(State(np.zeros(grid11.shape), np.zeros(grid11.shape), 0.4), p, grid11, w11)
    assert not du.any() and not dv.any()


def test_K_matches_double_loop(grid11, w11):
    p = get_problem(4)
    t = 0.0
    u = apply_boundary(initial_state(p, grid11).u, p.bc, w11, grid11, t)
    K = assemble_K(u, p, grid11, w11, t)
    x, y = grid11.gx.nodes, grid11.gy.nodes
    n = grid11.nx
    a2, b2 = w11.a2w, w11.b2w
    for i in range(1, n - 1):
        for j in range(1, n - 1):
            ref = p.f(x[i], y[j], t)
            ref += a2[i, 0] * u[0, j] + a2[i, n - 1] * u[n - 1, j]
            ref += b2[j, 0] * u[i, 0] + b2[j, n - 1] * u[i, n - 1]
            assert K[i - 1, j - 1] == pytest.approx(ref, rel=1e-13, abs=1e-13)


def test_problem2_forcing_at_centre():
    p = get_problem(2)
    assert p.f(0.5, 0.5, 0.0) == pytest.approx(2 * np.pi**2, rel=1e-14)


def test_exact_solution_residual_decreases():
    # v_t of the exact solution is u_tt = u for exp(x + y - t)
    p = get_problem(1)
    worst, deep = [], []
    for n in (11, 21, 41):
        g = make_grid(n, n)
        w = compute_weights(g)
        X, Y = g.mesh()
        u = p.exact(X, Y, 0.0)
        du, dv = rhs(State(u, -u, 0.0), p, g, w)
        e = np.abs(dv - u[1:-1, 1:-1])
        assert np.allclose(du, -u[1:-1, 1:-1])
        worst.append(e.max())
        deep.append(e[3:-3, 3:-3].max())
    assert worst[0] > worst[1] > worst[2]
    assert deep[0] > deep[1] > deep[2]
    assert deep[2] < 1e-3


def test_single_interior_node_by_hand():
    g = make_grid(3, 3)
    w = compute_weights(g)
    p = TelegraphProblem(
        0.8, 1.3, lambda x, y, t: 0.25 + 0 * x, lambda x, y: 0 * x, lambda x, y: 0 * x,
        BoundarySpec(*(EdgeSpec(DIRICHLET, lambda s, t, c=c: c + 0 * s) for c in (1.0, 2.0, 3.0, 4.0))),
    )
    u = apply_boundary(np.full((3, 3), 0.5), p.bc, w, g, 0.0)
    v = np.full((3, 3), -0.2)
    du, dv = rhs(State(u, v, 0.0), p, g, w)
    a2, b2 = w.a2w, w.b2w
    hand = (
        a2[1, 0] * 1.0 + a2[1, 1] * 0.5 + a2[1, 2] * 2.0
        + b2[1, 0] * 3.0 + b2[1, 1] * 0.5 + b2[1, 2] * 4.0
        - 2 * 0.8 * (-0.2) - 1.3**2 * 0.5 + 0.25
    )
    assert du[0, 0] == -0.2
    assert dv[0, 0] == pytest.approx(hand, rel=1e-13)


@pytest.mark.parametrize("pid", [1, 2, 4])
def test_matches_explicit_matrix_form(pid, rng):
    for n in (5, 8, 11):
        g = make_grid(n, n)
        w = compute_weights(g)
        p = get_problem(pid)
        t = 0.3
        u = apply_boundary(rng.normal(size=g.shape), p.bc, w, g, t)
        v = rng.normal(size=g.shape)
        du, dv = rhs(State(u, v, t), p, g, w)
        A = system_matrix(w, g, p.alpha, p.beta)
        G = forcing_vector(assemble_K(u, p, g, w, t))
        U = np.concatenate([u[1:-1, 1:-1].ravel(), v[1:-1, 1:-1].ravel()])
        ref = A @ U + G
        got = np.concatenate([du.ravel(), dv.ravel()])
        assert np.max(np.abs(got - ref) / (1 + np.abs(ref))) <= 1e-12


def test_rhs_superposition_with_frozen_forcing(grid11, w11, rng):
    p = get_problem(4)
    t = 0.6
    forcing = rhs(State(apply_boundary(np.zeros(grid11.shape), p.bc, w11, grid11, t), np.zeros(grid11.shape), t), p, grid11, w11)
    states = []
    for _ in range(2):
        u = apply_boundary(rng.normal(size=grid11.shape), p.bc, w11, grid11, t)
        states.append((u, rng.normal(size=grid11.shape)))
    a, b = 1.7, -0.4
    mix = State(a * states[0][0] + b * states[1][0], a * states[0][1] + b * states[1][1], t)
    mix.u = apply_boundary(mix.u, p.bc, w11, grid11, t)
    r1 = rhs(State(*states[0], t), p, grid11, w11)
    r2 = rhs(State(*states[1], t), p, grid11, w11)
    rm = rhs(mix, p, grid11, w11)
    for k in range(2):
        want = a * r1[k] + b * r2[k] + (1 - a - b) * forcing[k]
        assert np.allclose(rm[k], want, atol=1e-9)


def test_operator_has_zero_boundary_rows(grid11, w11, rng):
    L = telegraph_operator(get_problem(3), grid11, w11)
    out = L(0.2, rng.normal(size=(2,) + grid11.shape))
    for k in range(2):
        assert not out[k, 0].any() and not out[k, -1].any()
        assert not out[k, :, 0].any() and not out[k, :, -1].any()


def test_non_finite_data_is_reported():
    x = np.linspace(0, 1, 5)
    with pytest.raises(InputDataError, match=r"node \(0,\)"):
        sample(lambda x: np.log(x), x, what="initial u")


def test_alpha_must_be_positive():
    with pytest.raises(ValueError):
        zero_problem(alpha=0.0)
