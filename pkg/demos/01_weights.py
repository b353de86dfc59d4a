"""Quadrature weights from the modified trigonometric B-spline basis.

Run with ``python3 demos/01_weights.py``.
"""

import numpy as np

from telegraph_dqm import line_weights, make_grid1d, modified_basis, spline_constants
from telegraph_dqm.dqm_weights import exactness_residual

np.set_printoptions(precision=4, suppress=True, linewidth=110)

# Nodal constants of one spline at three spacings. The stencils are read off
# the differentiated spline itself; a1..a5 are the closed-form magnitudes.
print("h        a1        a2        a3          a4          a5")
for h in (0.1, 0.05, 0.025):
    c = spline_constants(h)
    print(f"{h:<6} {c.a1:9.6f} {c.a2:9.6f} {c.a3:10.4f} {c.a4:11.3f} {c.a5:11.3f}")

tab = spline_constants(0.1)
print("\nstencils at h=0.1 (left, centre, right)")
print("  value ", np.array(tab.value_row))
print("  d/dx  ", np.array(tab.d1_row))
print("  d2/dx2", np.array(tab.d2_row))

# The collocation matrix stays tridiagonal after the end-point modification,
# so the first-order weights come from one Thomas sweep per column.
g = make_grid1d(11)
basis = modified_basis(g)
print("\nPsi, first three rows (n=11)")
print(basis.psi[:3, :5])

w1, w2 = line_weights(11)
print(f"\nexactness residual on the basis: {exactness_residual(w1, basis):.2e}")
print(f"largest second-order row sum:      {np.max(np.abs(w2.sum(axis=1))):.2e}")

# How well do the weights differentiate smooth functions? sin(pi x) has
# u'' = 0 at both ends, exp(x) does not; the boundary rows feel the difference.
print("\n  n   d/dx sin(pi x)   d/dx exp(x)   d2/dx2 sin(pi x), interior")
for n in (11, 21, 41):
    x = make_grid1d(n).nodes
    a1, a2 = line_weights(n)
    e_sin = np.max(np.abs(a1 @ np.sin(np.pi * x) - np.pi * np.cos(np.pi * x)))
    e_exp = np.max(np.abs(a1 @ np.exp(x) - np.exp(x)))
    e_sin2 = np.max(np.abs(a2 @ np.sin(np.pi * x) + np.pi**2 * np.sin(np.pi * x))[1:-1])
    print(f"{n:4d}   {e_sin:12.3e}   {e_exp:12.3e}   {e_sin2:12.3e}")
