"""Transport on the fully connected network, three mutually checking ways.

The same physical model is solved by an exact five-variable reduction
(:mod:`~enaqt_fcn.reduced`), the full N-site Lindblad superoperator
(:mod:`~enaqt_fcn.lindblad`), and closed-form expressions
(:mod:`~enaqt_fcn.closed_form`); :mod:`~enaqt_fcn.optimize` locates optima
against the analytic optimal conditions.  Each layer is an independent
oracle for the others.
"""
from .closed_form import (
    CoherentRate,
    EffCoefficients,
    OptimalConditions,
    RateCoefficients,
    alpha_coeffs,
    beta_coeffs,
    coherent_efficiency_max,
    coherent_rate,
    efficiency_cf,
    enaqt_optimum,
    rate_cf,
    stationarity_residuals,
    transfer_time_cf,
    transport_cf,
    weak_decay_efficiency,
)
from .errors import (
    DegenerateDenominator,
    DimensionCap,
    EnaqtError,
    HorizonExceeded,
    NonConvergent,
    SingularGenerator,
)
from .lindblad import (
    Superoperator,
    brute_force_eta_tau,
    build_superoperator,
    evolve,
    reduce_state,
    transport_full,
)
from .model import (
    DensityMatrix,
    InitialCondition,
    NetworkParams,
    ReducedVector,
    SymmetricSuperposition,
    TransportResult,
    detuning,
    reduced_initial_vector,
    superposition_density_matrix,
    validate,
)
from .optimize import (
    OptimumReport,
    SweepAxis,
    SweepSpec,
    maximize,
    sweep,
    verify_optimum,
)
from .reduced import accumulated_eta, build_generator, trajectory, transport

__version__ = "0.1.0"

__all__ = [
    "CoherentRate",
    "DegenerateDenominator",
    "DensityMatrix",
    "DimensionCap",
    "EffCoefficients",
    "EnaqtError",
    "HorizonExceeded",
    "InitialCondition",
    "NetworkParams",
    "NonConvergent",
    "OptimalConditions",
    "OptimumReport",
    "RateCoefficients",
    "ReducedVector",
    "SingularGenerator",
    "Superoperator",
    "SweepAxis",
    "SweepSpec",
    "SymmetricSuperposition",
    "TransportResult",
    "accumulated_eta",
    "alpha_coeffs",
    "beta_coeffs",
    "brute_force_eta_tau",
    "build_generator",
    "build_superoperator",
    "coherent_efficiency_max",
    "coherent_rate",
    "detuning",
    "efficiency_cf",
    "enaqt_optimum",
    "evolve",
    "maximize",
    "rate_cf",
    "reduce_state",
    "reduced_initial_vector",
    "stationarity_residuals",
    "superposition_density_matrix",
    "sweep",
    "trajectory",
    "transfer_time_cf",
    "transport",
    "transport_cf",
    "transport_full",
    "validate",
    "verify_optimum",
    "weak_decay_efficiency",
]
