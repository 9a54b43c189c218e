"""
Locating the triangular points
==============================

Compare the first-order closed-form location of L4 with the exact
Newton-refined equilibrium as radiation pressure, oblateness and drag
are switched on.
"""

import numpy as np

from pr3bp import SystemParams, analytic_point, force_residual, refine_newton

# Without perturbations the point sits at the apex of an equilateral triangle.
p = SystemParams(mu=0.01)
print("classical:", analytic_point(p).position, refine_newton(p).position)

# Turn on all three perturbations, each at the 1e-3 level.
p = SystemParams(mu=0.01, q1=0.999, A2=1e-3, W1=1e-3)
approx, exact = analytic_point(p), refine_newton(p)
print(f"analytic  x*={approx.x_star:.9f} y*={approx.y_star:.9f} residual={approx.residual_norm:.1e}")
print(f"newton    x*={exact.x_star:.9f} y*={exact.y_star:.9f} residual={exact.residual_norm:.1e}")

# The closed form is first-order accurate: halving the perturbations
# shrinks its residual roughly fourfold.
print("\n       t   residual(analytic)")
for t in 1e-3 / 2.0 ** np.arange(5):
    p = SystemParams(mu=0.01, q1=1 - t, A2=t, W1=t)
    print(f"{t:.2e}   {np.hypot(*force_residual(analytic_point(p).position, p)):.3e}")

# Drag is odd in y at rest, so L5 is not the mirror image of L4 once W1 > 0.
p = SystemParams(mu=0.01, q1=0.999, A2=1e-3, W1=1e-4)
l4, l5 = refine_newton(p), refine_newton(p.mirrored())
print(f"\nL4 x*={l4.x_star:.6f}  L5 x*={l5.x_star:.6f}")
