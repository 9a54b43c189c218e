"""
Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with the measured numbers.
Run ``python3 tests/test_acceptance.py`` to get the eight lines without pytest.
"""

import math
import sys
import time
import warnings

import numpy as np
import pytest

from pr3bp import (ROUTH_MU, PR3BPError, State, SystemParams, Verdict, analytic_point,
                   characteristic_coefficients, classify, fit_growth_rate, integrate,
                   linearize_at, necessary_condition, no_drag_coefficients, quartic_roots,
                   radial_offset, refine_newton, routh_boundary, vertical_mode)
from pr3bp.oracle import root_distance

from conftest import ACCEPTANCE_LINES, SQRT3_2

SEED = 20261014


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def routh_boundary_check():
    t0 = time.perf_counter()
    coarse = routh_boundary(tol=1e-4)
    fine = routh_boundary(tol=1e-9)
    mid = 0.5 * (fine[0] + fine[1])
    ok = (abs(coarse[0] - 0.0385) <= 5e-4 and abs(coarse[1] - 0.0385) <= 5e-4
          and abs(mid - ROUTH_MU) < 1e-6)
    return report(1, "Routh boundary", ok,
                  f"coarse bracket [{coarse[0]:.5f}, {coarse[1]:.5f}], fine midpoint {mid:.10f} "
                  f"vs {ROUTH_MU:.10f} ({time.perf_counter() - t0:.2f} s)")


def classical_equilibrium_check():
    worst = 0.0
    for mu in (0.001, 0.01, 0.0385):
        for sign, params in ((1, SystemParams(mu)), (-1, SystemParams(mu).mirrored())):
            for pt in (analytic_point(params), refine_newton(params)):
                worst = max(worst, abs(pt.x_star - (0.5 - mu)), abs(pt.y_star - sign * SQRT3_2))
    return report(2, "classical equilibrium", worst < 1e-12, f"max deviation {worst:.2e} (limit 1e-12)")


def drag_instability_check(count=1200):
    rng = np.random.default_rng(SEED)
    mu = rng.uniform(0.0, 0.038, count)
    mu[mu == 0] = 1e-9
    q1 = rng.uniform(0.95, 1.0, count)
    A2 = rng.uniform(0.0, 0.01, count)
    W1 = 1e-3 - rng.uniform(0.0, 1e-3, count)  # (0, 1e-3]
    failures = newton_checked = newton_missing = newton_failures = 0
    for args in zip(mu, q1, A2, W1):
        params = SystemParams(*args)
        # The closed-form coefficients are evaluated at the analytic point.
        k = characteristic_coefficients(params, analytic_point(params))
        if not (k.c < 0 and not necessary_condition(k, params.mu)
                and quartic_roots(k).real.max() > 0):
            failures += 1
        # Where the exact equilibrium exists, the full classification must agree.
        try:
            r = classify(params)
        except PR3BPError:
            newton_missing += 1
            continue
        newton_checked += 1
        if not (r.verdict is Verdict.UNSTABLE and r.coeffs.c < 0 and r.max_real_part > 0):
            newton_failures += 1
    ok = failures == 0 and newton_failures == 0
    return report(3, "drag instability", ok,
                  f"{count} tuples, {failures} violations at the analytic point; "
                  f"{newton_checked} Newton-refined classifications, {newton_failures} violations, "
                  f"{newton_missing} without a converged equilibrium")


def oracle_consistency_check():
    mus = (0.01, 0.02, 0.1, 0.3)
    levels = [1e-3 / 2**k for k in range(5)]
    worst_level, exponents = 0.0, []
    for mu in mus:
        errors = []
        for t in levels:
            params = SystemParams(mu, 1.0 - t, t, t)
            pt = refine_newton(params)
            roots = classify(params, point=pt).roots
            errors.append(root_distance(roots, linearize_at(pt, params).eigenvalues))
        worst_level = max(worst_level, errors[0])
        exponents.append(np.polyfit(np.log(levels), np.log(errors), 1)[0])
    ok = worst_level < 1e-4 and all(abs(e - 2.0) <= 0.3 for e in exponents)
    return report(4, "oracle consistency", ok,
                  f"max root discrepancy {worst_level:.2e} at level 1e-3 (limit 1e-4); "
                  f"fitted exponents {', '.join(f'{e:.2f}' for e in exponents)} (need 2.0 +- 0.3)")


def vertical_mode_check(count=200):
    rng = np.random.default_rng(SEED + 5)
    sign_failures = worst = 0.0
    tested = 0
    for i in range(count):
        W1 = 0.0 if i % 4 == 0 else rng.uniform(1e-8, 1e-3)
        params = SystemParams(rng.uniform(1e-3, 0.45), rng.uniform(0.95, 1.0),
                              rng.uniform(0.0, 0.01), W1)
        try:
            pt = refine_newton(params)
        except PR3BPError:
            continue
        mode = vertical_mode(params, pt)
        if mode.overdamped:
            continue
        tested += 1
        re = mode.roots.real
        good = np.all(re == 0) if W1 == 0 else np.all(re < 0)
        sign_failures += not good
        block = linearize_at(pt, params, planar=False).vertical_block
        worst = max(worst, root_distance(mode.roots, np.linalg.eigvals(block)))
    ok = sign_failures == 0 and worst < 1e-8 and tested > 0
    return report(5, "vertical mode", ok,
                  f"{tested} tuples, {int(sign_failures)} sign violations, "
                  f"max numeric-block deviation {worst:.2e} (limit 1e-8)")


def trajectory_check():
    t0 = time.perf_counter()
    classical = SystemParams(0.01)
    pt = refine_newton(classical)
    t_end = 200 * 2 * math.pi
    traj = integrate(radial_offset(pt, classical, 1e-5), classical, t_end, tol=1e-10)
    bounded = float(np.max(traj.displacement(pt)))
    ok_a = bounded < 1e-3 and traj.t[-1] == pytest.approx(t_end)

    drag = SystemParams(0.01, 0.9999, 0.0, 1e-4)
    pt = refine_newton(drag)
    predicted = classify(drag, point=pt).max_real_part

    def left_linear_regime(t, s):
        return math.hypot(s[0] - pt.x_star, s[1] - pt.y_star) > 2e-3

    traj = integrate(radial_offset(pt, drag, 1e-5), drag, 1e6, tol=1e-10, stop=left_linear_regime)
    rate, window = fit_growth_rate(traj, pt)
    rel = abs(rate - predicted) / predicted
    ok_b = rel < 0.2
    return report(6, "trajectory confirmation", ok_a and ok_b,
                  f"(a) max displacement {bounded:.2e} over t=200*2pi (limit 1e-3); "
                  f"(b) fitted rate {rate:.4e} vs max Re {predicted:.4e}, "
                  f"{100 * rel:.1f}% apart over t in [{window[0]:.0f}, {window[1]:.0f}] (limit 20%) "
                  f"({time.perf_counter() - t0:.1f} s)")


def conservation_check():
    worst, orbits = 0.0, 0
    for mu, q1, A2 in ((0.01, 1.0, 0.0), (0.01, 0.98, 0.005), (0.02, 0.95, 0.01),
                       (0.1, 0.99, 0.002)):
        params = SystemParams(mu, q1, A2)
        r = 0.3
        v = math.sqrt((1 - mu) * q1 / r) - params.n * r
        starts = [State(r - mu, 0.0, 0.02, 0.0, v, 0.0)]
        if mu < ROUTH_MU:
            # Tadpole orbit about the stable triangular point.
            pt = refine_newton(params)
            starts.append(State(pt.x_star + 0.01, pt.y_star, 0.01, 0.0, 0.0, 0.0))
        for start in starts:
            traj = integrate(start, params, 100.0, tol=1e-10)
            if traj.collided:
                return report(7, "conservation", False, f"orbit collided at mu={mu}")
            C = traj.jacobi()
            worst = max(worst, float(np.max(np.abs(C - C[0]))))
            orbits += 1
    return report(7, "conservation", worst < 1e-8,
                  f"{orbits} orbits, max Jacobi drift {worst:.2e} over t=100 (limit 1e-8)")


def no_drag_reduction_check(count=500):
    rng = np.random.default_rng(SEED + 8)
    mismatches = 0
    worst_printed = worst_classical = 0.0
    for _ in range(count):
        mu, q1, A2 = rng.uniform(1e-4, 0.49), rng.uniform(0.9, 1.0), rng.uniform(0.0, 0.01)
        k = classify(SystemParams(mu, q1, A2)).coeffs
        n2 = 1 + 1.5 * A2
        lhs = (n2 - 3 * mu * A2) ** 2
        rhs = 36 * mu * (1 - mu) * (1 + 2.5 * A2) * (1 - q1 ** (2 / 3) / (4 * n2 * n2)) * n2
        if k.a != 0 or k.c != 0 or (k.b**2 > 4 * k.d) != (lhs > rhs):
            mismatches += 1
        worst_printed = max(worst_printed, abs((k.b**2 - 4 * k.d) - (lhs - rhs)))
        k = no_drag_coefficients(SystemParams(mu))
        worst_classical = max(worst_classical, abs(k.b - 1.0), abs(k.d - 6.75 * mu * (1 - mu)),
                              abs((k.b**2 - 4 * k.d) - (1 - 27 * mu * (1 - mu))))
    ok = mismatches == 0 and worst_printed < 1e-12 and worst_classical < 1e-12
    return report(8, "no-drag reduction", ok,
                  f"{count} tuples, {mismatches} mismatches; discriminant vs printed inequality "
                  f"{worst_printed:.1e}; classical coefficient deviation {worst_classical:.1e} "
                  f"(limit 1e-12)")


CHECKS = (routh_boundary_check, classical_equilibrium_check, drag_instability_check,
          oracle_consistency_check, vertical_mode_check, trajectory_check, conservation_check,
          no_drag_reduction_check)


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield


def test_criterion_1_routh_boundary():
    assert routh_boundary_check()


def test_criterion_2_classical_equilibrium():
    assert classical_equilibrium_check()


def test_criterion_3_drag_instability():
    assert drag_instability_check()


def test_criterion_4_oracle_consistency():
    assert oracle_consistency_check()


def test_criterion_5_vertical_mode():
    assert vertical_mode_check()


def test_criterion_6_trajectory_confirmation():
    assert trajectory_check()


def test_criterion_7_conservation():
    assert conservation_check()


def test_criterion_8_no_drag_reduction():
    assert no_drag_reduction_check()


if __name__ == "__main__":
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        results = [check() for check in CHECKS]
    sys.exit(0 if all(results) else 1)
