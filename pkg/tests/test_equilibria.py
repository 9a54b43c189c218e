import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pr3bp import (Branch, ConvergenceError, DegenerateError, DomainError, Method, SmallnessWarning,
                   SystemParams, analytic_point, f_star, force_residual, locate, refine_newton,
                   starred_radii)

from conftest import SQRT3_2


@pytest.mark.parametrize("branch, sign", [(Branch.L4, 1), (Branch.L5, -1)])
def test_analytic_classical(branch, sign):
    pt = analytic_point(SystemParams(mu=0.2, branch=branch))
    assert pt.method is Method.ANALYTIC
    assert pt.x_star == pytest.approx(0.3, abs=1e-15)
    assert pt.y_star == pytest.approx(sign * SQRT3_2, abs=1e-15)


def test_analytic_point_small_residual():
    p = SystemParams(0.01, 0.99, 1e-3, 1e-5)
    pt = analytic_point(p)
    exact = refine_newton(p)
    assert math.hypot(*force_residual(pt.position, p)) < 1e-4
    assert 1e-9 < math.hypot(pt.x_star - exact.x_star, pt.y_star - exact.y_star) < 1e-4
    assert pt.residual_norm == pytest.approx(math.hypot(*force_residual(pt.position, p)))


def test_analytic_degenerate_x0():
    # x0 = delta^2/2 - mu vanishes when mu = q1^(2/3)/2.
    q1 = 0.6**1.5
    with pytest.raises(DegenerateError):
        analytic_point(SystemParams(mu=0.3, q1=q1))
    # Newton from a perturbed seed still finds the point.
    pt = refine_newton(SystemParams(mu=0.3, q1=q1))
    assert pt.residual_norm < 1e-12


def test_starred_radii_examples():
    assert starred_radii(SystemParams(0.1)) == (1.0, 1.0)
    r1, r2 = starred_radii(SystemParams(0.01, 0.729))
    assert (r1, r2) == (pytest.approx(0.9, abs=1e-15), 1.0)
    r1, r2 = starred_radii(SystemParams(0.1, W1=1e-4))
    assert r1 == pytest.approx(1 - 1e-4 / (6 * 0.9 * SQRT3_2), abs=1e-15)
    assert r2 == pytest.approx(1 + 1e-4 / (0.3 * SQRT3_2), abs=1e-15)


def test_f_star_examples():
    assert f_star(SystemParams(0.1)) == 1.0
    assert f_star(SystemParams(0.1, A2=0.01)) == pytest.approx(1.0135, abs=1e-15)
    expected = 1 - 1e-4 * 9.02 * 4 / (18 * math.sqrt(3))
    assert f_star(SystemParams(0.1, q1=0.99, W1=1e-4)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("mu", [0.001, 0.01, 0.2, 0.45])
def test_newton_classical_fixed_point(mu):
    p = SystemParams(mu)
    pt = refine_newton(p, analytic_point(p))
    assert pt.method is Method.NEWTON
    assert pt.x_star == pytest.approx(0.5 - mu, abs=1e-12)
    assert pt.y_star == pytest.approx(SQRT3_2, abs=1e-12)
    assert pt.r1_star == pytest.approx(1.0, abs=1e-12)


def test_newton_idempotent():
    p = SystemParams(0.02, 0.97, 0.005, 1e-3)
    once = refine_newton(p)
    twice = refine_newton(p, once)
    assert math.hypot(once.x_star - twice.x_star, once.y_star - twice.y_star) < 1e-12


def test_newton_outside_smallness_never_silent():
    with pytest.warns(SmallnessWarning):
        p = SystemParams(0.1, W1=0.5)
    try:
        pt = refine_newton(p)
    except (ConvergenceError, DegenerateError, DomainError) as exc:
        if isinstance(exc, ConvergenceError):
            assert exc.last_iterate is not None
    else:
        assert pt.residual_norm < 1e-12


def test_newton_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as info:
        refine_newton(SystemParams(0.1, q1=0.95, W1=1e-3), max_iter=1, tol=1e-300)
    assert info.value.last_iterate is not None
    assert np.isfinite(info.value.residual)


def test_locate_switch():
    p = SystemParams(0.01, 0.99, 1e-3, 1e-5)
    assert locate(p, refine=False).method is Method.ANALYTIC
    assert locate(p).method is Method.NEWTON


def _scaled(t, mu=0.01, branch=Branch.L4):
    return SystemParams(mu, 1 - t, t, t, branch)


def _order(errors, factor=2.0):
    return np.polyfit(np.log([1 / factor**k for k in range(len(errors))]), np.log(errors), 1)[0]


@pytest.mark.parametrize("mu", [0.02, 0.1, 0.3])
def test_analytic_is_first_order_accurate(mu):
    resid, pos, radii = [], [], []
    for k in range(5):
        p = _scaled(4e-3 / 2**k, mu)
        a, e = analytic_point(p), refine_newton(p)
        resid.append(math.hypot(*force_residual(a.position, p)))
        pos.append(math.hypot(a.x_star - e.x_star, a.y_star - e.y_star))
        radii.append(max(abs(a.r1_star - e.r1_star), abs(a.r2_star - e.r2_star)))
    for errors in (resid, pos, radii):
        assert _order(errors) == pytest.approx(2.0, abs=0.3)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.001, 0.45), st.floats(0.9, 1.0), st.floats(0, 0.01))
def test_mirror_without_drag(mu, q1, A2):
    p = SystemParams(mu, q1, A2)
    for fn in (analytic_point, refine_newton):
        a, b = fn(p), fn(p.mirrored())
        assert b.x_star == pytest.approx(a.x_star, abs=1e-12)
        assert b.y_star == pytest.approx(-a.y_star, abs=1e-12)
        assert a.y_star > 0 > b.y_star


def test_drag_shifts_the_mirror_point():
    p = SystemParams(0.01, 0.999, 1e-3, 1e-4)
    a, b = refine_newton(p), refine_newton(p.mirrored())
    assert a.y_star > 0 > b.y_star
    # Drag at rest is odd in y, so the two points are not mirror images.
    assert abs(a.x_star - b.x_star) > 1e-3
