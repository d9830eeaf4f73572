"""
Particle creation across expansion rates
========================================

How many particles does a tanh-shaped expansion create, and how much of
that survives the truncation to one excitation per mode?
"""

import numpy as np

from cosmoqc import REFERENCE_PARAMS, bogoliubov, n_expected_full, n_expected_truncated, scale_factor

# the scale factor moves from A - B to A + B; rho sets how fast
for rho in (0.5, 1.0, 2.0):
    p = REFERENCE_PARAMS.with_(rho=rho)
    print(f"rho={rho}: C(-3)={scale_factor(p, -3.0):.4f}  C(3)={scale_factor(p, 3.0):.4f}")

# slow expansion makes almost nothing, a sudden one saturates
print("\n   rho        |beta|^2     n_full      n_trunc")
for rho in np.logspace(-2, 6, 9):
    p = REFERENCE_PARAMS.with_(rho=rho)
    b = bogoliubov(p)
    print(f"{rho:8.0e}  {abs(b.beta) ** 2:11.4e}  {n_expected_full(p):9.5f}  {n_expected_truncated(p):9.5f}")
