"""Triangular points of the photogravitational restricted three-body problem
with an oblate smaller primary and Poynting-Robertson drag."""

from .dynamics import (State, DragTerms, acceleration, drag_terms, force_residual,
                       jacobi_integral, potential_U1, potential_gradient)
from .equilibria import (Method, TriangularPoint, analytic_point, f_star, locate,
                         refine_newton, starred_radii)
from .errors import (CollisionError, ContractError, ConvergenceError, DegenerateError,
                     DomainError, PR3BPError, ResonanceError, SmallnessWarning, StiffnessError)
from .params import (Branch, DerivedParams, SystemParams, derive, drag_parameter,
                     mass_reduction_factor, mean_motion, oblateness_coefficient)
from .propagation import (LinearizedSystem, Trajectory, characteristic_of, fit_growth_rate,
                          integrate, linearize_at, radial_offset)
from .stability import (ROUTH_MU, CharCoeffs, Criterion, StabilityReport, Verdict,
                        characteristic_coefficients, classical_frequencies, classify,
                        drag_corrections, growth_rate, growth_rates, necessary_condition,
                        no_drag_coefficients, no_drag_condition, quartic_roots,
                        routh_boundary, vertical_mode)

__version__ = "0.1.0"
