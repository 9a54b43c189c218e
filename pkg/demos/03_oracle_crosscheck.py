"""
Closed forms against the numerical linearization
================================================

The quartic built from the closed-form coefficients is compared with the
eigenvalues of a finite-difference linearization of the full equations
of motion.
"""

from pr3bp import SystemParams
from pr3bp.oracle import compare

cases = {
    "classical": SystemParams(0.01),
    "radiation + oblateness": SystemParams(0.01, 0.999, 1e-3),
    "weak drag": SystemParams(0.001, 0.9999, 1e-4, 1e-6),
    "drag 1e-4": SystemParams(0.01, 0.9999, 0.0, 1e-4),
}
for name, params in cases.items():
    result = compare(params)
    print(f"{name:<24}" + "  ".join(f"{k}={v:.2e}" for k, v in result.items()))

# The A2 = 0 specialization of the coefficients can be compared directly.
p = cases["drag 1e-4"]
for variant in ("general", "no_oblateness"):
    print(f"{variant:<16} coefficient error {compare(p, variant)['coefficients']:.2e}")
