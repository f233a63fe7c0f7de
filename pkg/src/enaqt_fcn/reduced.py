"""Exact five-variable dynamics for the fully connected network.

The symmetry of the complete graph closes the equations of motion on five
real aggregates (trap population, real/imaginary trap-coherence sum,
all-elements sum, trace), so efficiency and mean transfer time follow from
5x5 linear solves at any network size.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.linalg import expm

from ._linalg import LUFactorization
from .model import NetworkParams, ReducedVector, TransportResult

__all__ = [
    "ReducedVector",
    "build_generator",
    "transport",
    "trajectory",
    "accumulated_eta",
]


def build_generator(params: NetworkParams) -> np.ndarray:
    """Assemble the 5x5 generator in (rho_nn, x, y, sigma, t) order."""
    n = params.n_sites
    j = params.coupling
    eps = params.trap_energy
    kappa = params.trap_rate
    gamma = params.decay_rate
    lam = params.dephasing_rate
    return np.array(
        [
            [-2.0 * (gamma + kappa), 0.0, 2.0 * j, 0.0, 0.0],
            [-(kappa - lam), -(lam + 2.0 * gamma + kappa), j * n - eps, 0.0, 0.0],
            [-eps, -(j * n - eps), -(lam + 2.0 * gamma + kappa), j, 0.0],
            [0.0, -2.0 * kappa, -2.0 * eps, -(lam + 2.0 * gamma), lam],
            [-2.0 * kappa, 0.0, 0.0, 0.0, -2.0 * gamma],
        ]
    )


def transport(params: NetworkParams, v0: ReducedVector | Sequence[float]) -> TransportResult:
    """Efficiency, mean transfer time, and rate by stationary linear solves.

    Integrating the trap population over all time equals applying the
    inverse generator once; the first time moment needs it twice.  Raises
    SingularGenerator when the generator has no inverse: kappa = Gamma = 0
    (nothing ever absorbs), or the fully coherent lambda = Gamma = 0 case,
    where population in dark states never reaches the trap (use the
    coherent-limit closed forms for that regime).
    """
    generator = build_generator(params)
    v0 = np.asarray(v0, dtype=float)
    factors = LUFactorization(generator)
    first = factors.solve(v0)
    kappa = params.trap_rate
    efficiency = -2.0 * kappa * first[0]
    decay_loss = -2.0 * params.decay_rate * first[4]
    if kappa == 0.0:
        # no trapping channel: eta is exactly 0 and tau is 0/0
        return TransportResult(0.0, None, 0.0, decay_loss, source="reduced")
    second = factors.solve(first)
    transfer_time = 2.0 * kappa * second[0] / efficiency
    return TransportResult(
        efficiency=float(efficiency),
        transfer_time=float(transfer_time),
        rate=float(efficiency / transfer_time),
        decay_loss=float(decay_loss),
        source="reduced",
    )


def _propagate(generator: np.ndarray, state: np.ndarray, times: np.ndarray) -> np.ndarray:
    """March a state through ascending times, one matrix exponential per step."""
    if times.ndim != 1 or (len(times) > 1 and np.any(np.diff(times) < 0)):
        raise ValueError("times must be a 1-D ascending sequence")
    if len(times) and times[0] < 0:
        raise ValueError("times must start at t >= 0")
    out = np.empty((len(times), len(state)))
    current = state
    previous_t = 0.0
    cache: dict[float, np.ndarray] = {}
    for i, t in enumerate(times):
        dt = float(t - previous_t)
        if dt > 0.0:
            step = cache.get(dt)
            if step is None:
                step = expm(generator * dt)
                cache[dt] = step
            current = step @ current
            previous_t = float(t)
        out[i] = current
    return out


def trajectory(
    params: NetworkParams,
    v0: ReducedVector | Sequence[float],
    times: Sequence[float],
) -> list[ReducedVector]:
    """Evolve the reduced state to each requested time.

    The generator is constant, so propagation is by matrix exponential
    (exact up to floating point), not time stepping.
    """
    states = _propagate(build_generator(params), np.asarray(v0, dtype=float), np.asarray(times, dtype=float))
    return [ReducedVector(*row) for row in states]


def accumulated_eta(
    params: NetworkParams,
    v0: ReducedVector | Sequence[float],
    t_max: float,
) -> float:
    """Trapped population up to a finite horizon.

    Appends an accumulator row (rate 2*kappa from the trap population) to
    the generator, so the finite-time integral is read off one matrix
    exponential.  Converges to ``transport(...).efficiency`` as the horizon
    grows.
    """
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    if t_max == 0:
        return 0.0
    augmented = np.zeros((6, 6))
    augmented[:5, :5] = build_generator(params)
    augmented[5, 0] = 2.0 * params.trap_rate
    state = np.zeros(6)
    state[:5] = np.asarray(v0, dtype=float)
    return float((expm(augmented * t_max) @ state)[5])
