"""
Watching drag destabilize L4
============================

Integrate the full equations from a small radial offset and fit the
exponential growth of the distance from the equilibrium.
"""

import math

from pr3bp import SystemParams, classify, fit_growth_rate, integrate, radial_offset, refine_newton

# Without drag the offset just librates.
p = SystemParams(mu=0.01)
pt = refine_newton(p)
traj = integrate(radial_offset(pt, p, 1e-5), p, 200 * 2 * math.pi)
print(f"classical: max displacement {traj.displacement(pt).max():.2e} over 200 periods")

# With drag the libration grows. Stop once the motion leaves the linear regime.
p = SystemParams(mu=0.01, q1=0.9999, W1=1e-4)
pt = refine_newton(p)
traj = integrate(radial_offset(pt, p, 1e-5), p, 1e6,
                 stop=lambda t, s: math.hypot(s[0] - pt.x_star, s[1] - pt.y_star) > 2e-3)
rate, (t0, t1) = fit_growth_rate(traj, pt)
predicted = classify(p, point=pt).max_real_part
print(f"drag: fitted rate {rate:.4e} over t in [{t0:.0f}, {t1:.0f}], linear theory {predicted:.4e}")
print(f"{traj.stats.steps} steps, {traj.stats.rejected} rejected, {traj.stats.nfev} evaluations")
