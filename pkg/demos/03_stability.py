"""Spectrum of the semi-discrete operator on growing grids.

Run with ``python3 demos/03_stability.py``.
"""

import numpy as np

from telegraph_dqm import compute_weights, make_grid, stability_report
from telegraph_dqm.stability import half_disk_radius

# The interior second-order blocks have real negative spectra, so the
# Kronecker sum B does too, and both roots lambda_A of
# lambda^2 + 2 alpha lambda = lambda_B sit in the closed left half-plane.
for n in (11, 21, 31, 41):
    g = make_grid(n, n)
    r = stability_report(compute_weights(g), g, alpha=1.0, beta=1.0, dt=0.01)
    lb = r.lambda_B.eigenvalues.real
    print(r.summary())
    print(f"    lambda_B in [{lb.min():.4g}, {lb.max():.4g}]")

# Damped wave case (beta = 0) and a strongly damped case
for alpha, beta in ((1.0, 0.0), (10.0, 5.0)):
    g = make_grid(21, 21)
    r = stability_report(compute_weights(g), g, alpha, beta)
    print(f"alpha={alpha}, beta={beta}: {'PASS' if r.passed else 'FAIL'}, max Re(lambda_A)={r.lambda_A.max_real:.4g}")

# Largest half-disk |z| <= r, Re z <= 0 inside each scheme's stability region;
# dt below r / max|lambda_A| keeps every mode damped.
for scheme in ("rk43", "rk54"):
    rad = half_disk_radius(scheme)
    g = make_grid(41, 41)
    r = stability_report(compute_weights(g), g, 1.0, 1.0)
    print(f"{scheme}: half-disk radius {rad:.3f}, dt limit on 41x41 about {rad / np.max(np.abs(r.lambda_A.eigenvalues)):.4f}")
