"""
Triangular equilibrium points.

Two routes are provided: the first-order closed forms in the small
parameters ``W1``, ``A2`` (``analytic_point``), and a Newton solve of the
exact equilibrium conditions ``Ux = Uy = 0`` (``refine_newton``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import distances, force_residual
from .errors import ConvergenceError, DegenerateError, DomainError, PR3BPError
from .params import SystemParams, derive

#: ``analytic_point`` refuses to divide by ``x0`` smaller than this.
X0_GUARD = 1e-6


class Method(str, enum.Enum):
    ANALYTIC = "analytic_first_order"
    NEWTON = "newton_refined"


@dataclass(frozen=True)
class TriangularPoint:
    """
    A triangular equilibrium point.

    ``r1_star`` and ``r2_star`` are the distances to the primaries used by
    the stability coefficients: the first-order closed forms for an analytic
    point, the exact distances for a Newton-refined one.
    """

    x_star: float
    y_star: float
    method: Method
    r1_star: float
    r2_star: float
    residual_norm: float

    @property
    def position(self):
        return self.x_star, self.y_star


def starred_radii(params: SystemParams):
    """
    First-order distances of the triangular point from the primaries.

    ``r1* = q1^(1/3) (1 - n W1 / (6 (1 - mu) y0) - A2 / 2)`` and
    ``r2* = 1 + n W1 (1 - 5 A2 / 2) / (3 mu y0)``.
    """
    mu, A2, W1 = params.mu, params.A2, params.W1
    d = derive(params)
    if mu <= 0 or mu >= 1 or d.y0 == 0:
        raise DomainError("starred radii need 0 < mu < 1 and y0 != 0")
    r1 = d.delta * (1.0 - d.n * W1 / (6.0 * (1.0 - mu) * d.y0) - 0.5 * A2)
    r2 = 1.0 + d.n * W1 / (3.0 * mu * d.y0) * (1.0 - 2.5 * A2)
    return r1, r2


def f_star(params: SystemParams):
    """
    Closed-form value of ``f`` at the triangular point, with ``q1 = 1 - eps``:
    ``1 - n W1 (9 + 2 eps)(4 - 3 A2) / (18 sqrt 3) + 3 (1 - mu) A2 / 2``.
    """
    eps = 1.0 - params.q1
    n, A2 = params.n, params.A2
    return (1.0 - n * params.W1 * (9.0 + 2.0 * eps) * (4.0 - 3.0 * A2) / (18.0 * math.sqrt(3.0))
            + 1.5 * (1.0 - params.mu) * A2)


def analytic_point(params: SystemParams) -> TriangularPoint:
    """
    First-order location of the triangular point.

    Valid for ``W1 << 1`` and ``A2 << 1``. Exact in the purely
    photogravitational case ``W1 = A2 = 0``.

    Raises
    ------
    DegenerateError
        If ``x0 = delta^2/2 - mu`` is too close to zero for the ``x`` formula.
    DomainError
        If the argument of the square root in the ``y`` formula is negative.
    """
    mu, A2, W1 = params.mu, params.A2, params.W1
    d = derive(params)
    n, x0, y0 = d.n, d.x0, d.y0
    h = 0.5 * d.delta**2
    if abs(x0) < X0_GUARD:
        raise DegenerateError(
            f"x0 = {x0:.3e} is too small for the analytic x formula; "
            "use refine_newton from a perturbed seed"
        )
    mm = 3.0 * mu * (1.0 - mu)

    x_drag = n * W1 * ((1.0 - mu) * (1.0 + 2.5 * A2) + mu * (1.0 - 0.5 * A2) * h) / (mm * y0 * x0)
    x_star = x0 * (1.0 - x_drag - h * A2 / x0)

    y_drag = (n * W1 * d.delta**2
              * (2.0 * mu - 1.0 - mu * (1.0 - 1.5 * A2) * h + 3.5 * (1.0 - mu) * A2)
              / (mm * y0**3))
    arg = 1.0 - y_drag - d.delta**2 * (1.0 - h) * A2 / y0**2
    if arg < 0:
        raise DomainError(f"analytic y formula has negative radicand {arg:.3e}")
    y_star = y0 * math.sqrt(arg)

    r1, r2 = starred_radii(params)
    return TriangularPoint(
        x_star=x_star,
        y_star=y_star,
        method=Method.ANALYTIC,
        r1_star=r1,
        r2_star=r2,
        residual_norm=_residual_norm((x_star, y_star), params),
    )


def refine_newton(params: SystemParams, initial: TriangularPoint | None = None, *,
                  tol=1e-12, max_iter=50, fd_step=1e-7) -> TriangularPoint:
    """
    Solve ``Ux = Uy = 0`` by Newton's method with a central-difference Jacobian.

    Parameters
    ----------
    params : SystemParams
    initial : TriangularPoint, optional
        Starting point. Defaults to :func:`analytic_point`, or to the
        zeroth-order point if the analytic formulas are unavailable.
    tol : float
        Required residual norm.
    max_iter : int
        Iteration limit.
    fd_step : float
        Step of the central differences.

    Raises
    ------
    ConvergenceError
        If the residual is still above ``tol`` after ``max_iter`` iterations,
        or the iterate crosses to the other side of the primaries' axis.
    DegenerateError
        If the Jacobian is singular.
    """
    if initial is None:
        try:
            initial = analytic_point(params)
        except (DomainError, DegenerateError):
            d = derive(params)
            initial = TriangularPoint(d.x0, d.y0, Method.ANALYTIC, d.delta, 1.0, math.nan)
    p = np.array(initial.position, dtype=float)
    sign = params.branch.sign

    F = np.array(force_residual(p, params))
    norm = float(np.hypot(*F))
    for _ in range(max_iter + 1):
        if norm < tol:
            break
        J = np.empty((2, 2))
        for k in range(2):
            e = np.zeros(2)
            e[k] = fd_step
            J[:, k] = (np.array(force_residual(p + e, params))
                       - np.array(force_residual(p - e, params))) / (2.0 * fd_step)
        try:
            dp = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise DegenerateError(f"singular Jacobian at {tuple(p)}") from exc
        # Backtrack so a poor seed cannot throw the iterate across the axis.
        t = 1.0
        for _ in range(30):
            trial = p + t * dp
            if trial[1] * sign > 0:
                try:
                    F_trial = np.array(force_residual(trial, params))
                except PR3BPError:
                    F_trial = None
                if F_trial is not None and np.hypot(*F_trial) < norm:
                    break
            t *= 0.5
        else:
            raise ConvergenceError("Newton step failed to reduce the residual",
                                   tuple(p), norm)
        p, F = trial, F_trial
        norm = float(np.hypot(*F))
    else:
        raise ConvergenceError(
            f"no convergence in {max_iter} iterations (residual {norm:.3e})", tuple(p), norm)

    r1, r2 = distances((p[0], p[1], 0.0), params.mu)
    return TriangularPoint(float(p[0]), float(p[1]), Method.NEWTON, r1, r2, norm)


def locate(params: SystemParams, refine=True, **newton_kwargs) -> TriangularPoint:
    """Analytic point, optionally refined to an exact equilibrium."""
    if refine:
        return refine_newton(params, **newton_kwargs)
    return analytic_point(params)


def _residual_norm(position, params):
    try:
        return float(np.hypot(*force_residual(position, params)))
    except PR3BPError:
        return math.nan
