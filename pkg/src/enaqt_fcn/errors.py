"""Exception types shared across the solver modules."""


class EnaqtError(Exception):
    """Base class for all solver errors."""


class SingularGenerator(EnaqtError):
    """Generator has no inverse (kappa = Gamma = 0: nothing absorbs probability)."""


class DimensionCap(EnaqtError):
    """Requested network exceeds the dense-superoperator size cap."""


class DegenerateDenominator(EnaqtError):
    """Closed-form expression is 0/0 for these parameters (lambda + 2*s*Gamma = 0 or kappa = 0)."""


class NonConvergent(EnaqtError):
    """Iterative routine hit its iteration cap before meeting its convergence criterion."""


class HorizonExceeded(EnaqtError):
    """Time integration reached the horizon cap with unabsorbed probability remaining."""
