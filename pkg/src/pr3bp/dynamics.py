"""
Rotating-frame equations of motion with radiation pressure, oblateness and
Poynting-Robertson drag.

The potential is

    U1 = n^2 (x^2 + y^2) / 2 + (1 - mu) q1 / r1 + mu / r2 + mu A2 / (2 r2^3)

and the drag reduces the x, y, z force components by ``W1 N_k / r1^2``,
where ``N_k`` are linear in the velocity. Distances include ``z^2``; in the
plane they reduce to the planar definitions.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import CollisionError
from .params import SystemParams

#: Distances below this raise :class:`CollisionError` (configurable per call).
COLLISION_FLOOR = 1e-12


class State(NamedTuple):
    """Position and velocity in the rotating frame."""

    x: float
    y: float
    z: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0

    @classmethod
    def from_array(cls, values) -> "State":
        return cls(*(float(v) for v in values))

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @property
    def speed_squared(self) -> float:
        return self.vx * self.vx + self.vy * self.vy + self.vz * self.vz


class DragTerms(NamedTuple):
    """Auxiliary drag quantities ``N`` and ``N1, N2, N3``."""

    N: float
    N1: float
    N2: float
    N3: float


def distances(state, mu, floor=COLLISION_FLOOR):
    """Distances ``(r1, r2)`` from the bigger and smaller primary."""
    x, y, z = state[0], state[1], state[2]
    r1 = math.sqrt((x + mu) ** 2 + y * y + z * z)
    r2 = math.sqrt((x + mu - 1.0) ** 2 + y * y + z * z)
    if r1 < floor or r2 < floor:
        raise CollisionError(f"collision: r1={r1:.3e}, r2={r2:.3e} (floor {floor:.1e})")
    return r1, r2


def potential_U1(state, params: SystemParams, floor=COLLISION_FLOOR):
    """Value of the potential ``U1`` at ``state`` (velocity is ignored)."""
    mu, n = params.mu, params.n
    r1, r2 = distances(state, mu, floor)
    x, y = state[0], state[1]
    return (
        0.5 * n * n * (x * x + y * y)
        + (1.0 - mu) * params.q1 / r1
        + mu / r2
        + 0.5 * mu * params.A2 / r2**3
    )


def potential_gradient(state, params: SystemParams, floor=COLLISION_FLOOR):
    """Analytic gradient ``(dU1/dx, dU1/dy, dU1/dz)``."""
    distances(state, params.mu, floor)
    x, y, z = state[0], state[1], state[2]
    return _gradient(x, y, z, params.mu, params.q1, params.A2, params.n)


def drag_terms(state, params: SystemParams, floor=COLLISION_FLOOR) -> DragTerms:
    """Drag auxiliaries ``N, N1, N2, N3`` at ``state``."""
    distances(state, params.mu, floor)
    x, y, z, vx, vy, vz = State(*state)
    n = params.n
    xp = x + params.mu
    r1sq = xp * xp + y * y + z * z
    N = xp * vx + y * vy + z * vz
    return DragTerms(
        N=N,
        N1=xp * N / r1sq + vx - n * y,
        N2=y * N / r1sq + vy + n * xp,
        N3=z * N / r1sq + vz,
    )


def acceleration(state, params: SystemParams, floor=COLLISION_FLOOR):
    """
    Full second derivative of position, Coriolis terms included.

    Returns
    -------
    tuple of float
        ``(ax, ay, az)`` where ``ax = 2 n vy + Ux``, ``ay = -2 n vx + Uy``,
        ``az = Uz`` and ``U_k = dU1/dk - W1 N_k / r1^2``.
    """
    distances(state, params.mu, floor)
    s = State(*state)
    return _acceleration(*s, params.mu, params.q1, params.A2, params.W1, params.n)


def force_residual(position, params: SystemParams, floor=COLLISION_FLOOR):
    """
    In-plane force ``(Ux, Uy)`` at rest; its zeros are the triangular points.

    ``position`` is ``(x, y)``; the body is at rest in the plane ``z = 0``.
    """
    x, y = float(position[0]), float(position[1])
    distances((x, y, 0.0), params.mu, floor)
    ax, ay, _ = _acceleration(x, y, 0.0, 0.0, 0.0, 0.0,
                              params.mu, params.q1, params.A2, params.W1, params.n)
    return ax, ay


def jacobi_integral(state, params: SystemParams, floor=COLLISION_FLOOR):
    """``C = 2 U1 - v^2``; conserved only when ``W1 = 0``."""
    return 2.0 * potential_U1(state, params, floor) - State(*state).speed_squared


def _gradient(x, y, z, mu, q1, A2, n):
    xp = x + mu
    xm = xp - 1.0
    r1sq = xp * xp + y * y + z * z
    r2sq = xm * xm + y * y + z * z
    g1 = (1.0 - mu) * q1 / (r1sq * math.sqrt(r1sq))
    g2 = mu / (r2sq * math.sqrt(r2sq)) * (1.0 + 1.5 * A2 / r2sq)
    n2 = n * n
    return n2 * x - g1 * xp - g2 * xm, n2 * y - (g1 + g2) * y, -(g1 + g2) * z


def _acceleration(x, y, z, vx, vy, vz, mu, q1, A2, W1, n):
    # Hot path for the integrator: no collision check, plain floats.
    xp = x + mu
    xm = xp - 1.0
    yy_zz = y * y + z * z
    r1sq = xp * xp + yy_zz
    r2sq = xm * xm + yy_zz
    g1 = (1.0 - mu) * q1 / (r1sq * math.sqrt(r1sq))
    g2 = mu / (r2sq * math.sqrt(r2sq)) * (1.0 + 1.5 * A2 / r2sq)
    g = g1 + g2
    n2 = n * n
    ax = 2.0 * n * vy + n2 * x - g1 * xp - g2 * xm
    ay = -2.0 * n * vx + n2 * y - g * y
    az = -g * z
    if W1:
        k = W1 / r1sq
        N = (xp * vx + y * vy + z * vz) / r1sq
        ax -= k * (xp * N + vx - n * y)
        ay -= k * (y * N + vy + n * xp)
        az -= k * (z * N + vz)
    return ax, ay, az


def make_rhs(params: SystemParams):
    """First-order right-hand side ``f(t, s)`` for an ODE solver."""
    mu, q1, A2, W1, n = params.mu, params.q1, params.A2, params.W1, params.n

    def rhs(t, s):
        x, y, z, vx, vy, vz = s
        ax, ay, az = _acceleration(x, y, z, vx, vy, vz, mu, q1, A2, W1, n)
        return np.array((vx, vy, vz, ax, ay, az))

    return rhs
