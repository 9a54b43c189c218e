"""Numerical cross-checks of the closed-form results."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .dynamics import potential_gradient, potential_U1
from .equilibria import analytic_point, refine_newton
from .params import SystemParams
from .propagation import characteristic_of, linearize_at
from .stability import classify, vertical_mode


def root_distance(roots_a, roots_b) -> float:
    """Largest distance between two root sets under the best one-to-one matching."""
    roots_a = np.asarray(roots_a, dtype=complex)
    roots_b = np.asarray(roots_b, dtype=complex)
    cost = np.abs(roots_a[:, None] - roots_b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def gradient_fd_error(state, params: SystemParams, h=1e-6) -> float:
    """Relative difference between the analytic and the central-difference gradient."""
    s = np.asarray(state, dtype=float)[:3]
    fd = np.empty(3)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        fd[k] = (potential_U1(s + e, params) - potential_U1(s - e, params)) / (2 * h)
    exact = np.array(potential_gradient(s, params))
    return float(np.max(np.abs(fd - exact)) / max(1.0, float(np.max(np.abs(exact)))))


def compare(params: SystemParams, variant="general") -> dict:
    """
    Deviations between closed forms and numerical oracles at one parameter tuple.

    Keys
    ----
    position : distance between the analytic and the Newton equilibrium
    coefficients : max |(a, b, c, d) used by ``classify`` - characteristic polynomial of the Jacobian|
    roots : root distance between the closed-form quartic and the Jacobian eigenvalues
    vertical : root distance between the vertical-mode formula and the Jacobian z block
    decoupling : largest entry coupling the planar and vertical blocks
    gradient : relative error of the analytic potential gradient at the equilibrium
    """
    exact = refine_newton(params)
    approx = analytic_point(params)
    lin = linearize_at(exact, params, planar=False)
    planar = linearize_at(exact, params, planar=True)
    report = classify(params, point=exact, variant=variant)
    coeffs = report.coeffs
    oracle_coeffs = characteristic_of(planar)

    M = lin.matrix
    planar_idx, vertical_idx = [0, 1, 3, 4], [2, 5]
    coupling = max(np.abs(M[np.ix_(planar_idx, vertical_idx)]).max(),
                   np.abs(M[np.ix_(vertical_idx, planar_idx)]).max())
    return {
        "position": float(np.hypot(exact.x_star - approx.x_star, exact.y_star - approx.y_star)),
        "coefficients": float(np.max(np.abs(coeffs.as_array() - oracle_coeffs))),
        "roots": root_distance(report.roots, planar.eigenvalues),
        "vertical": root_distance(vertical_mode(params, exact).roots,
                                  np.linalg.eigvals(lin.vertical_block)),
        "decoupling": float(coupling),
        "gradient": gradient_fd_error((exact.x_star, exact.y_star, 0.0), params),
    }
