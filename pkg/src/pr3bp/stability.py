"""
Linear stability of the triangular points.

Planar perturbations obey the monic quartic

    lambda^4 + a lambda^3 + b lambda^2 + c lambda + d = 0

whose coefficients are closed-form functions of the equilibrium. Vertical
perturbations decouple into a damped oscillator. Drag makes ``a > 0`` and
``c < 0``; the necessary condition ``0 < c + (27/4) mu (1 - mu)(2c - a) < a``
then fails and one planar mode grows.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .equilibria import TriangularPoint, f_star, locate
from .errors import ContractError, DomainError, ResonanceError
from .params import SystemParams

#: Real parts with magnitude below this count as zero.
ROOT_TOL = 1e-9
#: Minimum ``|2 z^2 - b0|`` before the root corrections are declared resonant.
RESONANCE_GUARD = 1e-9
#: Critical mass ratio where ``27 mu (1 - mu) = 1``.
ROUTH_MU = 0.5 * (1.0 - math.sqrt(23.0 / 27.0))


class Verdict(str, enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


class Criterion(str, enum.Enum):
    NECESSARY = "necessary-condition"
    ROUTH = "Routh"
    NO_DRAG = "no-drag-discriminant"
    MAX_REAL_PART = "max-real-part"


@dataclass(frozen=True)
class CharCoeffs:
    """Coefficients of the monic planar quartic, ``b = b0 + b1`` with ``b0 = 2 n^2``."""

    a: float
    b0: float
    b1: float
    c: float
    d: float
    f_star: float

    @property
    def b(self) -> float:
        return self.b0 + self.b1

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


class VerticalMode(NamedTuple):
    roots: np.ndarray
    overdamped: bool


@dataclass(frozen=True)
class StabilityReport:
    """
    Outcome of :func:`classify`.

    ``e1``, ``e2`` and ``re_lambda`` are ordered like ``classical_z2``
    (minus branch first) and are ``nan`` where the closed forms do not
    apply (complex ``z^2`` or a resonant denominator).
    """

    params: SystemParams
    point: TriangularPoint
    coeffs: CharCoeffs
    roots: np.ndarray
    classical_z2: tuple
    e1: tuple
    e2: tuple
    re_lambda: float
    vertical_roots: np.ndarray
    verdict: Verdict
    criterion: Criterion

    @property
    def max_real_part(self) -> float:
        return float(self.roots.real.max())

    @property
    def vertical_max_real_part(self) -> float:
        return float(self.vertical_roots.real.max())


def characteristic_coefficients(params: SystemParams, point: TriangularPoint,
                                variant="general") -> CharCoeffs:
    """
    Quartic coefficients at a triangular point.

    Parameters
    ----------
    params : SystemParams
    point : TriangularPoint
        Supplies ``x*``, ``y*`` and the starred distances.
    variant : {"general", "no_oblateness"}
        ``"general"`` uses the general coefficients. ``"no_oblateness"`` uses
        the ``A2 = 0`` specialization, whose ``c`` and second ``d`` term have
        ``r1*^2 r1*^5`` where the general form has ``r1*^2 r2*^5`` and
        ``r1*^5 r2*^5``.

    Notes
    -----
    ``f*`` is the closed form of :func:`pr3bp.equilibria.f_star`.
    """
    mu, q1, A2, W1 = params.mu, params.q1, params.A2, params.W1
    r1, r2 = point.r1_star, point.r2_star
    if r1 <= 0 or r2 <= 0:
        raise DomainError("starred radii must be positive")
    if point.y_star == 0:
        raise DomainError("triangular point must have y != 0")
    x, y = point.x_star, point.y_star
    f = f_star(params)
    xp = x + mu
    geom = xp * xp - xp + y * y

    if variant == "general":
        n = params.n
        n2 = n * n
        K = 1.0 + 2.5 * A2 / r2**2
        r2_5 = r2**5
        a = 3.0 * W1 / r1**2
        b0 = 2.0 * n2
        b1 = -f - 3.0 * mu * A2 / r2_5 + 2.0 * W1**2 / r1**4
        c = -a * (n2 + mu * A2 / r2_5 + mu * K * y * y / (r1**2 * r2_5))
        d = ((n2 - f) * (n2 + 2.0 * f - 3.0 * mu * A2 / r2_5)
             + 9.0 * mu * (1.0 - mu) * q1 * K * y * y / (r1**5 * r2_5)
             - 6.0 * n * W1 * K * geom / (r1**4 * r2_5)
             + n2 * W1**2 / r1**4)
    elif variant == "no_oblateness":
        if A2 != 0:
            raise ContractError("the no_oblateness coefficients assume A2 = 0")
        a = 3.0 * W1 / r1**2
        b0 = 2.0
        b1 = -f + 2.0 * W1**2 / r1**4
        c = -a * (1.0 + mu * y * y / (r1**2 * r1**5))
        d = ((1.0 - f) * (1.0 + 2.0 * f)
             + 9.0 * mu * (1.0 - mu) * q1 * y * y / (r1**2 * r1**5)
             - 6.0 * W1 * geom / (r1**4 * r2**5)
             + W1**2 / r1**4)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return CharCoeffs(a=a, b0=b0, b1=b1, c=c, d=d, f_star=f)


def no_drag_coefficients(params: SystemParams) -> CharCoeffs:
    """
    Closed-form quartic for ``W1 = 0``: ``a = c = 0``, ``b = n^2 - 3 mu A2`` and
    ``d = 9 mu (1 - mu)(1 + 5 A2 / 2)(1 - q1^(2/3) / (4 n^4)) n^2``.
    """
    if params.W1 != 0:
        raise ContractError("no_drag_coefficients requires W1 = 0")
    mu, A2 = params.mu, params.A2
    n2 = params.n**2
    b = n2 - 3.0 * mu * A2
    d = 9.0 * mu * (1.0 - mu) * (1.0 + 2.5 * A2) * (1.0 - params.q1 ** (2.0 / 3.0) / (4.0 * n2 * n2)) * n2
    return CharCoeffs(a=0.0, b0=2.0 * n2, b1=b - 2.0 * n2, c=0.0, d=d, f_star=n2)


def _as_coeffs(coeffs):
    if isinstance(coeffs, CharCoeffs):
        return coeffs.a, coeffs.b, coeffs.c, coeffs.d
    a, b, c, d = (float(v) for v in coeffs)
    return a, b, c, d


def sort_roots(roots) -> np.ndarray:
    """Sort by real part descending, then imaginary part descending."""
    roots = np.asarray(roots, dtype=complex) + 0.0  # drop negative zeros
    order = np.lexsort((-roots.imag, -roots.real))
    return roots[order]


def quartic_roots(coeffs) -> np.ndarray:
    """
    All four roots of ``l^4 + a l^3 + b l^2 + c l + d``.

    Uses the quadratic formula in ``l^2`` when ``a = c = 0`` and a
    companion-matrix eigensolve otherwise. Roots come back sorted with
    :func:`sort_roots`.
    """
    a, b, c, d = _as_coeffs(coeffs)
    if a == 0 and c == 0:
        s = cmath.sqrt(b * b - 4.0 * d)
        roots = []
        for lam2 in ((-b + s) / 2.0, (-b - s) / 2.0):
            w = cmath.sqrt(lam2)
            roots += [w, -w]
        roots = np.array(roots)
    else:
        companion = np.zeros((4, 4))
        companion[0, :] = [-a, -b, -c, -d]
        companion[1:, :3] = np.eye(3)
        roots = np.linalg.eigvals(companion)
        roots = np.array([_polish(r, a, b, c, d) for r in roots])
        # Restore exact conjugate pairing disturbed by polishing.
        roots = _conjugate_close(roots)
    return sort_roots(roots)


def _poly(lam, a, b, c, d):
    return (((lam + a) * lam + b) * lam + c) * lam + d


def _polish(r, a, b, c, d, steps=3):
    for _ in range(steps):
        p = _poly(r, a, b, c, d)
        dp = ((4.0 * r + 3.0 * a) * r + 2.0 * b) * r + c
        if dp == 0:
            break
        with np.errstate(over="ignore", invalid="ignore"):
            r_new = r - p / dp
            improved = cmath.isfinite(r_new) and abs(_poly(r_new, a, b, c, d)) < abs(p)
        if not improved:
            break
        r = r_new
    return r


def _conjugate_close(roots):
    out = []
    remaining = list(roots)
    while remaining:
        r = remaining.pop(0)
        if abs(r.imag) <= 1e-14 * max(1.0, abs(r)):
            out.append(complex(r.real, 0.0))
            continue
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - r.conjugate()))
        partner = remaining.pop(j)
        re = 0.5 * (r.real + partner.real)
        im = 0.5 * (abs(r.imag) + abs(partner.imag))
        out += [complex(re, im), complex(re, -im)]
    return np.array(out)


def root_residuals(coeffs, roots) -> np.ndarray:
    """Scaled residuals ``|p(l)| / max(1, |l|^4)``."""
    a, b, c, d = _as_coeffs(coeffs)
    roots = np.asarray(roots, dtype=complex)
    return np.abs(_poly(roots, a, b, c, d)) / np.maximum(1.0, np.abs(roots) ** 4)


def classical_frequencies(mu):
    """
    The two values of ``z^2 = (1 -+ sqrt(1 - 27 mu (1 - mu))) / 2``.

    Returns
    -------
    (z2_minus, z2_plus)
        Floats below the Routh bound; complex numbers above it, which
        signals that the unperturbed triangular point is already unstable.
    """
    if not 0 < mu < 0.5:
        raise DomainError(f"mu must lie in (0, 1/2), got {mu}")
    disc = 1.0 - 27.0 * mu * (1.0 - mu)
    s = math.sqrt(disc) if disc >= 0 else cmath.sqrt(disc)
    return 0.5 * (1.0 - s), 0.5 * (1.0 + s)


def drag_corrections(coeffs: CharCoeffs, z2, *, b_ref=None):
    """
    First-order relative corrections ``(e1, e2)`` to the root ``i z``.

    ``e1 = (-d + b0 z^2 - z^4) / (2 z^2 (2 z^2 - b0))`` and
    ``e2 = (-c z + a z^3) / (2 z^2 (2 z^2 - b0))`` for the upper-sign root;
    the lower-sign root has ``-e2``. The corrected roots are
    ``+-[-e2 + (1 + e1) i] z``.

    Parameters
    ----------
    coeffs : CharCoeffs
    z2 : float
        One of the values from :func:`classical_frequencies`.
    b_ref : float, optional
        Value substituted for ``b0``. Defaults to ``coeffs.b0 = 2 n^2``.
        Passing ``coeffs.b`` gives corrections that are accurate to first
        order in the drag; with ``b0`` the expansion treats ``b1`` as small,
        which it is not.

    Returns
    -------
    e1, e2, roots
        ``roots`` is the corrected conjugate pair, upper-sign root first.
    """
    if isinstance(z2, complex) or z2 <= 0:
        raise DomainError(f"z^2 must be a positive real number, got {z2}")
    b0 = coeffs.b0 if b_ref is None else b_ref
    a, c, d = coeffs.a, coeffs.c, coeffs.d
    gap = 2.0 * z2 - b0
    if abs(gap) < RESONANCE_GUARD:
        raise ResonanceError(f"2 z^2 - b0 = {gap:.3e}: first-order corrections break down")
    z = math.sqrt(z2)
    denom = 2.0 * z2 * gap
    e1 = (-d + b0 * z2 - z2 * z2) / denom
    e2 = (-c * z + a * z**3) / denom
    upper = complex(-e2, 1.0 + e1) * z
    return e1, e2, np.array([upper, upper.conjugate()])


def growth_rates(coeffs: CharCoeffs, mu):
    """
    Closed-form real parts ``(c - a z^2) / (2 (2 z^2 - 1))`` for both values of ``z^2``.

    Entries are ``nan`` when ``z^2`` is complex (beyond the Routh bound).

    Raises
    ------
    ResonanceError
        If ``2 z^2 - 1`` vanishes (at the Routh bound).
    """
    out = []
    for z2 in classical_frequencies(mu):
        if isinstance(z2, complex):
            out.append(math.nan)
            continue
        gap = 2.0 * z2 - 1.0
        if abs(gap) < RESONANCE_GUARD:
            raise ResonanceError(f"2 z^2 - 1 = {gap:.3e}")
        out.append((coeffs.c - coeffs.a * z2) / (2.0 * gap) + 0.0)
    return tuple(out)


def growth_rate(coeffs: CharCoeffs, mu):
    """Largest closed-form real part over both branches of ``z^2``."""
    rates = [r for r in growth_rates(coeffs, mu) if not math.isnan(r)]
    return max(rates) if rates else math.nan


def necessary_condition(coeffs, mu, *, limit=False):
    """
    Necessary condition for stability, ``0 < c + (27/4) mu (1 - mu)(2c - a) < a``.

    With ``limit=True`` evaluate the ``mu -> 0`` form ``0 < c < a``.
    """
    a, _, c, _ = _as_coeffs(coeffs)
    if limit:
        return 0.0 < c < a
    middle = c + 6.75 * mu * (1.0 - mu) * (2.0 * c - a)
    return 0.0 < middle < a


def discriminant(coeffs):
    a, b, c, d = _as_coeffs(coeffs)
    return b * b - 4.0 * d


def no_drag_condition(coeffs) -> bool:
    """
    ``b^2 > 4 d``: all four roots purely imaginary when ``a = c = 0``.

    Raises
    ------
    ContractError
        If ``a`` or ``c`` is nonzero (drag present).
    """
    a, b, c, d = _as_coeffs(coeffs)
    if a != 0 or c != 0:
        raise ContractError("no_drag_condition applies only without drag (a = c = 0)")
    return b * b > 4.0 * d


def vertical_mode(params: SystemParams, point: TriangularPoint) -> VerticalMode:
    """
    Roots ``(-W1/r1^2 +- sqrt(W1^2/r1^4 - 4 f)) / 2`` of the out-of-plane motion.

    ``f = (1 - mu) q1 / r1^3 + mu (1 + 3 A2 / (2 r2^2)) / r2^3`` is evaluated
    with the point's distances. When ``f <= W1^2 / (4 r1^4)`` the roots are
    real and ``overdamped`` is set.
    """
    mu, W1 = params.mu, params.W1
    r1, r2 = point.r1_star, point.r2_star
    f = (1.0 - mu) * params.q1 / r1**3 + mu / r2**3 * (1.0 + 1.5 * params.A2 / r2**2)
    damping = W1 / r1**2
    disc = damping * damping - 4.0 * f
    s = cmath.sqrt(disc)
    roots = sort_roots([0.5 * (-damping + s), 0.5 * (-damping - s)])
    return VerticalMode(roots=roots, overdamped=bool(disc >= 0))


def classify(params: SystemParams, *, refine=True, variant="general", point=None) -> StabilityReport:
    """
    Locate the triangular point, build its quartic and decide stability.

    Parameters
    ----------
    params : SystemParams
    refine : bool
        Newton-refine the equilibrium (default) or use the analytic point.
    variant : str
        Coefficient variant for the drag case, see
        :func:`characteristic_coefficients`.
    point : TriangularPoint, optional
        Precomputed equilibrium; skips the location step.

    Notes
    -----
    Without drag the closed-form ``W1 = 0`` coefficients decide through
    ``b^2 > 4 d``; the criterion is reported as ``Routh`` in the classical
    case ``q1 = 1, A2 = 0``. With drag the necessary condition is tested
    and, when it fails, the sign of the largest root real part confirms
    instability.
    """
    if point is None:
        point = locate(params, refine=refine)
    drag = params.W1 > 0
    coeffs = characteristic_coefficients(params, point, variant) if drag else no_drag_coefficients(params)
    roots = quartic_roots(coeffs)
    max_re = float(roots.real.max())

    z2s = classical_frequencies(params.mu)
    e1, e2 = [], []
    for z2 in z2s:
        try:
            c1, c2, _ = drag_corrections(coeffs, z2)
        except (DomainError, ResonanceError):
            c1 = c2 = math.nan
        e1.append(c1)
        e2.append(c2)
    try:
        re_lambda = growth_rate(coeffs, params.mu)
    except ResonanceError:
        re_lambda = math.nan

    vertical = vertical_mode(params, point)

    if not drag:
        criterion = Criterion.ROUTH if params.q1 == 1.0 and params.A2 == 0.0 else Criterion.NO_DRAG
        disc = discriminant(coeffs)
        if abs(disc) <= 1e-14 * coeffs.b**2:
            verdict = Verdict.MARGINAL
        elif no_drag_condition(coeffs):
            verdict = Verdict.STABLE
        else:
            verdict = Verdict.UNSTABLE
    elif not necessary_condition(coeffs, params.mu) and max_re > ROOT_TOL:
        verdict, criterion = Verdict.UNSTABLE, Criterion.NECESSARY
    else:
        criterion = Criterion.MAX_REAL_PART
        if max_re > ROOT_TOL:
            verdict = Verdict.UNSTABLE
        elif max_re < -ROOT_TOL:
            verdict = Verdict.STABLE
        else:
            verdict = Verdict.MARGINAL

    return StabilityReport(
        params=params,
        point=point,
        coeffs=coeffs,
        roots=roots,
        classical_z2=z2s,
        e1=tuple(e1),
        e2=tuple(e2),
        re_lambda=re_lambda,
        vertical_roots=vertical.roots,
        verdict=verdict,
        criterion=criterion,
    )


def routh_boundary(lo=1e-3, hi=0.1, tol=1e-12, **classify_kwargs):
    """
    Bisect :func:`classify` over ``mu`` in the classical problem.

    Returns the bracket ``(mu_stable, mu_unstable)``; its width is below ``tol``.
    """
    def stable(mu):
        return classify(SystemParams(mu=mu), **classify_kwargs).verdict is Verdict.STABLE

    if not stable(lo) or stable(hi):
        raise DomainError("bracket does not straddle the stability transition")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi
