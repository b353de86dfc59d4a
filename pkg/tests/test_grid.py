import numpy as np
import pytest
from hypothesis import given, strategies as st

from telegraph_dqm.grid import make_grid, make_grid1d


@pytest.mark.parametrize("n, h", [(11, 0.1), (41, 0.025), (3, 0.5)])
def test_spacing(n, h):
    g = make_grid(n, n)
    assert g.gx.h == pytest.approx(h, abs=1e-15)
    assert g.gx.nodes[0] == 0.0 and g.gx.nodes[-1] == 1.0


def test_smallest_grid_has_one_interior_node():
    g = make_grid(3, 3)
    assert g.interior_shape == (1, 1)
    assert g.size == 9


def test_too_few_nodes():
    with pytest.raises(ValueError, match="at least 3"):
        make_grid1d(2)


def test_mesh_orientation():
    g = make_grid(4, 6)
    X, Y = g.mesh()
    assert X.shape == (4, 6)
    assert np.all(X[:, 0] == g.gx.nodes)
    assert np.all(Y[0, :] == g.gy.nodes)
    assert g.label == "4x6"


def test_nodes_are_read_only():
    g = make_grid1d(5)
    with pytest.raises(ValueError):
        g.nodes[1] = 0.3


@given(st.integers(min_value=3, max_value=400))
def test_uniform_steps(n):
    g = make_grid1d(n)
    assert np.max(np.abs(np.diff(g.nodes) - g.h)) <= 4 * np.finfo(float).eps
