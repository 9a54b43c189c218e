"""Exception and warning types raised by the library."""


class PR3BPError(Exception):
    """Base class for all library errors."""


class DomainError(PR3BPError, ValueError):
    """An input lies outside the domain of a formula or of the model."""


class CollisionError(PR3BPError):
    """A distance to one of the primaries dropped below the collision floor."""


class DegenerateError(PR3BPError):
    """A configuration makes a formula or a linear solve singular."""


class ConvergenceError(PR3BPError):
    """An iterative solver failed to converge.

    Attributes
    ----------
    last_iterate : tuple of float
        The final iterate reached before giving up.
    residual : float
        Residual norm at ``last_iterate``.
    """

    def __init__(self, message, last_iterate=None, residual=float("nan")):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class ResonanceError(PR3BPError):
    """The first-order root corrections have a vanishing denominator."""


class ContractError(PR3BPError):
    """A function was called outside its documented calling contract."""


class StiffnessError(PR3BPError):
    """The adaptive integrator's step size underflowed."""


class SmallnessWarning(UserWarning):
    """Drag or oblateness is too large for the first-order analytic formulas."""
