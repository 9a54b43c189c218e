"""
Stability of the triangular points
==================================

Without drag the points are linearly stable below the Routh mass ratio.
Any amount of Poynting-Robertson drag makes them unstable.
"""

from pr3bp import ROUTH_MU, SystemParams, classify, routh_boundary

for mu in (0.02, 0.05):
    r = classify(SystemParams(mu))
    print(f"mu={mu}: {r.verdict.value:<9} ({r.criterion.value})")

lo, hi = routh_boundary(tol=1e-10)
print(f"bisected transition [{lo:.10f}, {hi:.10f}], closed form {ROUTH_MU:.10f}")

# Radiation and oblateness alone keep the center; drag adds a slow growth.
for W1 in (0.0, 1e-6, 1e-5, 1e-4):
    r = classify(SystemParams(mu=0.001, q1=0.9999, A2=1e-4, W1=W1))
    print(f"W1={W1:.0e}  c={r.coeffs.c:+.3e}  max Re={r.max_real_part:+.3e}  "
          f"closed form Re={r.re_lambda:+.3e}  {r.verdict.value} ({r.criterion.value})")

# The out-of-plane oscillation is damped rather than excited.
r = classify(SystemParams(mu=0.001, q1=0.9999, A2=1e-4, W1=1e-4))
print("vertical roots:", r.vertical_roots)
