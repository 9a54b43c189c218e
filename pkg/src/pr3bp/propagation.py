"""
Numerical integration and finite-difference linearization of the full
equations of motion. Both serve as independent checks on the closed-form
stability results.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import DOP853

from .dynamics import State, _acceleration, jacobi_integral, make_rhs
from .equilibria import TriangularPoint
from .errors import ContractError, DomainError, StiffnessError
from .params import SystemParams
from .stability import sort_roots

#: Central-difference step for position and velocity derivatives.
FD_STEP = 1e-6
#: ``linearize_at`` refuses points whose force residual exceeds this.
EQUILIBRIUM_LIMIT = 1e-6
#: Default distance from a primary that counts as a collision while integrating.
COLLISION_RADIUS = 1e-6

# Function evaluations per attempted DOP853 step in scipy (12 stages, FSAL).
_EVALS_PER_ATTEMPT = 12


@dataclass
class IntegratorStats:
    steps: int = 0
    rejected: int = 0
    nfev: int = 0
    last_step: float = math.nan


@dataclass
class Trajectory:
    """
    Sampled solution of the equations of motion.

    ``t`` is strictly increasing and ``states[0]`` is the initial condition.
    ``collided`` marks a trajectory truncated at a close approach to a primary.
    """

    t: np.ndarray
    states: np.ndarray
    params: SystemParams
    stats: IntegratorStats = field(default_factory=IntegratorStats)
    collided: bool = False
    stopped: bool = False

    @property
    def samples(self):
        return [(float(t), State.from_array(s)) for t, s in zip(self.t, self.states)]

    @property
    def final(self) -> State:
        return State.from_array(self.states[-1])

    def displacement(self, point: TriangularPoint) -> np.ndarray:
        """Distance of each sample from the equilibrium ``point``."""
        dx = self.states[:, 0] - point.x_star
        dy = self.states[:, 1] - point.y_star
        return np.sqrt(dx * dx + dy * dy + self.states[:, 2] ** 2)

    def jacobi(self) -> np.ndarray:
        return np.array([jacobi_integral(s, self.params) for s in self.states])

    def rows(self, point: TriangularPoint | None = None):
        """
        Export rows ``(t, x, y, z, vx, vy, vz, C, displacement)``.

        ``C`` is the Jacobi-type integral when ``W1 = 0`` and ``nan`` otherwise;
        ``displacement`` is ``nan`` without a reference point.
        """
        C = self.jacobi() if self.params.W1 == 0 else np.full(len(self.t), math.nan)
        disp = self.displacement(point) if point is not None else np.full(len(self.t), math.nan)
        for i in range(len(self.t)):
            yield (float(self.t[i]), *map(float, self.states[i]), float(C[i]), float(disp[i]))


@dataclass(frozen=True)
class LinearizedSystem:
    """First-order system matrix at an equilibrium and its eigenvalues."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    planar: bool

    @property
    def vertical_block(self) -> np.ndarray:
        if self.planar:
            raise ContractError("a planar linearization has no vertical block")
        idx = [2, 5]
        return self.matrix[np.ix_(idx, idx)]

    @property
    def planar_block(self) -> np.ndarray:
        if self.planar:
            return self.matrix
        idx = [0, 1, 3, 4]
        return self.matrix[np.ix_(idx, idx)]


def integrate(initial, params: SystemParams, t_end, tol=1e-10, *, t_eval=None,
              collision_radius=COLLISION_RADIUS, stop=None) -> Trajectory:
    """
    Integrate the equations of motion with an adaptive Dormand-Prince 8(5,3) pair.

    Parameters
    ----------
    initial : State or sequence of 6 floats
    params : SystemParams
    t_end : float
        Final time, positive.
    tol : float
        Relative and absolute local error tolerance per step.
    t_eval : array_like, optional
        Sample times in ``(0, t_end]``, filled from the dense output. By
        default every accepted step is recorded.
    collision_radius : float
        Stop with ``collided=True`` when closer than this to either primary.
    stop : callable, optional
        ``stop(t, state) -> bool`` checked after each accepted step; a true
        value ends the integration early with ``stopped=True``.

    Raises
    ------
    StiffnessError
        If the step size underflows away from the primaries.
    """
    if t_end <= 0 or tol <= 0:
        raise DomainError("t_end and tol must be positive")
    y0 = np.asarray(initial, dtype=float)
    if y0.shape != (6,):
        raise DomainError("initial state must have 6 components")
    mu = params.mu

    def too_close(s):
        xp = s[0] + mu
        r1 = math.sqrt(xp * xp + s[1] ** 2 + s[2] ** 2)
        r2 = math.sqrt((xp - 1.0) ** 2 + s[1] ** 2 + s[2] ** 2)
        return min(r1, r2) < collision_radius

    ts, ys = [0.0], [y0.copy()]
    stats = IntegratorStats()
    traj = Trajectory(np.empty(0), np.empty((0, 6)), params, stats)
    if too_close(y0):
        traj.collided = True
        traj.t, traj.states = np.array(ts), np.array(ys)
        return traj

    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
        t_eval = t_eval[(t_eval > 0) & (t_eval <= t_end)]
        if np.any(np.diff(t_eval) <= 0):
            raise DomainError("t_eval must be strictly increasing")
    next_sample = 0

    solver = DOP853(make_rhs(params), 0.0, y0, t_end, rtol=tol, atol=tol)
    while solver.status == "running":
        before = solver.nfev
        message = solver.step()
        attempts = max(1, (solver.nfev - before) // _EVALS_PER_ATTEMPT)
        if solver.status == "failed":
            if too_close(solver.y) or _near_primary(solver.y, mu, 1e-3):
                traj.collided = True
                break
            raise StiffnessError(f"integration failed at t={solver.t}: {message}")
        stats.steps += 1
        stats.rejected += attempts - 1
        stats.last_step = solver.step_size

        if t_eval is None:
            ts.append(solver.t)
            ys.append(solver.y.copy())
        else:
            stop_at = np.searchsorted(t_eval, solver.t, side="right")
            if stop_at > next_sample:
                dense = solver.dense_output()
                for tk in t_eval[next_sample:stop_at]:
                    ts.append(float(tk))
                    ys.append(dense(tk))
                next_sample = stop_at

        if too_close(solver.y):
            traj.collided = True
            if t_eval is not None and ts[-1] < solver.t:
                ts.append(solver.t)
                ys.append(solver.y.copy())
            break
        if stop is not None and stop(solver.t, solver.y):
            traj.stopped = True
            break

    stats.nfev = solver.nfev
    traj.t, traj.states = np.array(ts), np.array(ys)
    return traj


def _near_primary(s, mu, radius):
    xp = s[0] + mu
    r1 = math.sqrt(xp * xp + s[1] ** 2 + s[2] ** 2)
    r2 = math.sqrt((xp - 1.0) ** 2 + s[1] ** 2 + s[2] ** 2)
    return min(r1, r2) < radius


def linearize_at(point: TriangularPoint, params: SystemParams, planar=True, *,
                 step=FD_STEP) -> LinearizedSystem:
    """
    Finite-difference linearization of the equations of motion at ``point``.

    Derivatives are taken with respect to positions and velocities, since
    drag makes the force velocity-dependent.

    Raises
    ------
    ContractError
        If ``point`` is not an equilibrium to within ``EQUILIBRIUM_LIMIT``.
    """
    ax, ay, _ = _acceleration(point.x_star, point.y_star, 0.0, 0.0, 0.0, 0.0,
                              params.mu, params.q1, params.A2, params.W1, params.n)
    residual = math.hypot(ax, ay)
    if not residual <= EQUILIBRIUM_LIMIT:
        raise ContractError(f"force residual {residual:.3e} exceeds {EQUILIBRIUM_LIMIT:.0e}")

    s0 = np.array([point.x_star, point.y_star, 0.0, 0.0, 0.0, 0.0])
    args = (params.mu, params.q1, params.A2, params.W1, params.n)
    D = np.empty((3, 6))
    for k in range(6):
        e = np.zeros(6)
        e[k] = step
        D[:, k] = (np.array(_acceleration(*(s0 + e), *args))
                   - np.array(_acceleration(*(s0 - e), *args))) / (2.0 * step)
    M = np.zeros((6, 6))
    M[:3, 3:] = np.eye(3)
    M[3:, :] = D
    if planar:
        idx = [0, 1, 3, 4]
        M = M[np.ix_(idx, idx)]
    return LinearizedSystem(matrix=M, eigenvalues=sort_roots(np.linalg.eigvals(M)), planar=planar)


def characteristic_of(linearized: LinearizedSystem) -> np.ndarray:
    """
    Coefficients ``(a, b, c, d)`` of ``det(l I - M)`` for a planar system.

    Built from the elementary symmetric functions of the eigenvalues.
    """
    if not linearized.planar:
        raise ContractError("characteristic_of expects a planar (4x4) linearization")
    poly = np.poly(linearized.eigenvalues)
    scale = max(1.0, float(np.max(np.abs(poly))))
    if np.max(np.abs(poly.imag)) > 1e-10 * scale:
        warnings.warn("characteristic polynomial has a non-negligible imaginary part",
                      RuntimeWarning, stacklevel=2)
    return poly.real[1:]


def radial_offset(point: TriangularPoint, params: SystemParams, offset) -> State:
    """State at rest displaced by ``offset`` along the line from the bigger primary."""
    xp = point.x_star + params.mu
    r = math.hypot(xp, point.y_star)
    return State(point.x_star + offset * xp / r, point.y_star + offset * point.y_star / r)


def fit_growth_rate(trajectory: Trajectory, point: TriangularPoint, *, lower=None, upper=1e-3):
    """
    Exponential growth rate of the distance from ``point``.

    The fit window runs from the first time the displacement reaches
    ``lower`` (default: ten times the initial displacement) to the first
    time it reaches ``upper``. The rate is the least-squares slope of the
    log-displacement over every sample in that window.

    Returns
    -------
    rate : float
    window : (float, float)
        Start and end time of the fit window.
    """
    d = trajectory.displacement(point)
    if lower is None:
        lower = 10.0 * d[0]
    above_lower = np.nonzero(d >= lower)[0]
    above_upper = np.nonzero(d >= upper)[0]
    if len(above_lower) == 0 or len(above_upper) == 0:
        raise DomainError("displacement never spans the fit window")
    i0, i1 = above_lower[0], above_upper[0]
    if i1 - i0 < 10:
        raise DomainError("fit window holds fewer than 10 samples")
    t = trajectory.t[i0:i1 + 1]
    slope = np.polyfit(t, np.log(d[i0:i1 + 1]), 1)[0]
    return float(slope), (float(t[0]), float(t[-1]))
