"""
Model parameters for the photogravitational restricted three-body problem
with an oblate smaller primary and Poynting-Robertson drag.

All quantities are in normalized rotating-frame units: the primary
separation, the total mass and the gravitational constant are all one.
The bigger primary (mass ``1 - mu``) sits at ``x = -mu`` and radiates; the
smaller primary (mass ``mu``) sits at ``x = 1 - mu`` and is oblate.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, SmallnessWarning

#: Above this value of ``W1`` or ``A2`` the first-order analytic formulas degrade.
SMALLNESS_LIMIT = 0.1

#: Radiation constant (C.G.S.) in the mass-reduction formula ``q = 1 - K chi / (a rho)``.
RADIATION_CONSTANT_CGS = 5.6e-5


class Branch(str, enum.Enum):
    """Which triangular point: L4 has ``y > 0``, L5 has ``y < 0``."""

    L4 = "L4"
    L5 = "L5"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.L4 else -1


@dataclass(frozen=True)
class SystemParams:
    """
    Physical inputs of the model.

    Parameters
    ----------
    mu : float
        Mass ratio ``m2 / (m1 + m2)``, with ``0 < mu < 1/2``.
    q1 : float
        Mass-reduction factor of the radiating bigger primary, ``0 < q1 <= 1``.
    A2 : float
        Oblateness coefficient of the smaller primary, ``A2 >= 0``.
    W1 : float
        Poynting-Robertson drag parameter, ``W1 >= 0``.
    branch : Branch
        Triangular point to study.

    Notes
    -----
    Values of ``W1`` or ``A2`` above ``SMALLNESS_LIMIT`` are accepted but emit a
    :class:`SmallnessWarning`; the exact dynamics remain valid, only the
    first-order closed forms lose accuracy.
    """

    mu: float
    q1: float = 1.0
    A2: float = 0.0
    W1: float = 0.0
    branch: Branch = Branch.L4

    def __post_init__(self):
        object.__setattr__(self, "branch", Branch(self.branch))
        for name in ("mu", "q1", "A2", "W1"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not 0.0 < self.mu < 0.5:
            raise DomainError(f"mu must lie in (0, 1/2), got {self.mu}")
        if not 0.0 < self.q1 <= 1.0:
            raise DomainError(f"q1 must lie in (0, 1], got {self.q1}")
        if self.A2 < 0.0:
            raise DomainError(f"A2 must be non-negative, got {self.A2}")
        if self.W1 < 0.0:
            raise DomainError(f"W1 must be non-negative, got {self.W1}")
        if not self.in_smallness_domain:
            warnings.warn(
                f"W1={self.W1}, A2={self.A2}: first-order analytic formulas are "
                f"unreliable above {SMALLNESS_LIMIT}",
                SmallnessWarning,
                stacklevel=3,
            )

    @property
    def in_smallness_domain(self) -> bool:
        return self.W1 <= SMALLNESS_LIMIT and self.A2 <= SMALLNESS_LIMIT

    @property
    def n(self) -> float:
        """Mean motion of the rotating frame."""
        return mean_motion(self.A2)

    @property
    def delta(self) -> float:
        return self.q1 ** (1.0 / 3.0)

    @property
    def is_classical(self) -> bool:
        return self.q1 == 1.0 and self.A2 == 0.0 and self.W1 == 0.0

    def replace(self, **changes) -> "SystemParams":
        fields = dict(mu=self.mu, q1=self.q1, A2=self.A2, W1=self.W1, branch=self.branch)
        fields.update(changes)
        return SystemParams(**fields)

    def mirrored(self) -> "SystemParams":
        """Same physical system, other triangular point."""
        other = Branch.L5 if self.branch is Branch.L4 else Branch.L4
        return self.replace(branch=other)


@dataclass(frozen=True)
class DerivedParams:
    """Mean motion, ``delta = q1**(1/3)`` and the zeroth-order point ``(x0, y0)``."""

    n: float
    delta: float
    x0: float
    y0: float


def mean_motion(A2):
    """
    Mean motion ``n = sqrt(1 + 3 A2 / 2)`` of the rotating frame.

    Raises
    ------
    DomainError
        If ``A2`` is negative.
    """
    if A2 < 0:
        raise DomainError(f"A2 must be non-negative, got {A2}")
    return math.sqrt(1.0 + 1.5 * A2)


def mass_reduction_factor(radius_a, density_rho, efficiency_chi):
    """
    Mass-reduction factor ``q = 1 - 5.6e-5 chi / (a rho)`` in C.G.S. units.

    Parameters
    ----------
    radius_a : float
        Particle radius in cm.
    density_rho : float
        Particle density in g/cm^3.
    efficiency_chi : float
        Radiation-pressure efficiency factor.

    Returns
    -------
    float
        ``q``. A warning is issued when ``q <= 0``, i.e. when radiation
        pressure overwhelms gravity and the model no longer applies.
    """
    if radius_a <= 0 or density_rho <= 0:
        raise DomainError("particle radius and density must be positive")
    if efficiency_chi < 0:
        raise DomainError("radiation-pressure efficiency must be non-negative")
    q = 1.0 - RADIATION_CONSTANT_CGS * efficiency_chi / (radius_a * density_rho)
    if q <= 0:
        warnings.warn(f"q = {q} <= 0: radiation exceeds gravity", SmallnessWarning, stacklevel=2)
    return q


def oblateness_coefficient(r_e, r_p, r):
    """Oblateness coefficient ``A2 = (r_e**2 - r_p**2) / (5 r**2)``."""
    if r <= 0:
        raise DomainError(f"primary separation must be positive, got {r}")
    if r_p < 0 or r_e < r_p:
        raise DomainError("need r_e >= r_p >= 0 (prolate bodies are not modelled)")
    return (r_e * r_e - r_p * r_p) / (5.0 * r * r)


def drag_parameter(q1, mu, light_speed):
    """
    Drag parameter ``W1 = (1 - q1)(1 - mu) / c_d`` from a dimensionless light speed.

    This is a convenience outside the core model, which takes ``W1`` as a
    direct input. ``light_speed`` is the speed of light in units of the
    primaries' relative orbital speed.
    """
    if light_speed <= 0:
        raise DomainError("light_speed must be positive")
    if not 0 < q1 <= 1 or not 0 < mu < 0.5:
        raise DomainError("q1 must lie in (0, 1] and mu in (0, 1/2)")
    return (1.0 - q1) * (1.0 - mu) / light_speed


def derive(params: SystemParams) -> DerivedParams:
    """Mean motion and the zeroth-order triangular point for ``params``."""
    delta = params.delta
    half_d2 = 0.5 * delta * delta
    x0 = half_d2 - params.mu
    y0 = params.branch.sign * delta * math.sqrt(1.0 - 0.25 * delta * delta)
    return DerivedParams(n=params.n, delta=delta, x0=x0, y0=y0)
