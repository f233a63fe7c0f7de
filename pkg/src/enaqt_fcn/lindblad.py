"""Full N-site Lindblad dynamics, used as the ground-truth oracle.

The density-matrix equation of motion is linear, so it is represented as
one real matrix acting on the stacked (Re rho, Im rho) vectorization
(column-major over (j, k)).  Everything downstream — evolution, resolvent
solves for efficiency and transfer time, and brute-force quadrature — runs
on that single real generator, sharing kernels with the reduced module.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ._linalg import LUFactorization
from .errors import DimensionCap, HorizonExceeded, SingularGenerator
from .model import NetworkParams, ReducedVector, TransportResult
from .reduced import _propagate

DEFAULT_DIMENSION_CAP = 40
TRACE_CUTOFF = 1e-12
TRACE_RESIDUAL_LIMIT = 1e-9


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Real-matrix action of the Lindblad generator on vectorized states."""

    n_sites: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        """Complex dimension N^2 of the density-matrix space."""
        return self.n_sites * self.n_sites


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Stack (Re rho, Im rho), each flattened column-major."""
    rho = np.asarray(rho, dtype=complex)
    return np.concatenate([rho.real.ravel(order="F"), rho.imag.ravel(order="F")])


def unvectorize(vec: np.ndarray, n_sites: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    n2 = n_sites * n_sites
    real = vec[:n2].reshape((n_sites, n_sites), order="F")
    imag = vec[n2:].reshape((n_sites, n_sites), order="F")
    return real + 1j * imag


def _damping_matrix(params: NetworkParams) -> np.ndarray:
    """Elementwise damping rates: dephasing off the diagonal, uniform decay,
    and trapping on every element touching the trap site."""
    n = params.n_sites
    is_trap = (np.arange(n) == n - 1).astype(float)
    return (
        params.dephasing_rate * (1.0 - np.eye(n))
        + 2.0 * params.decay_rate
        + params.trap_rate * np.add.outer(is_trap, is_trap)
    )


def build_superoperator(
    params: NetworkParams, dimension_cap: int = DEFAULT_DIMENSION_CAP
) -> Superoperator:
    """Assemble the 2N^2 x 2N^2 real generator for the full dynamics."""
    n = params.n_sites
    if n > dimension_cap:
        raise DimensionCap(
            f"n_sites={n} exceeds the dense superoperator cap ({dimension_cap}); "
            "use the reduced module for large networks"
        )
    energies = np.zeros(n)
    energies[-1] = params.trap_energy
    energy_gaps = np.subtract.outer(energies, energies)

    identity = np.eye(n)
    ones = np.ones((n, n))
    # coherent part: energy gaps act elementwise, the uniform coupling acts
    # as a commutator with the all-ones matrix
    coherent = np.diag(energy_gaps.ravel(order="F")) + params.coupling * (
        np.kron(identity, ones) - np.kron(ones, identity)
    )
    damping = np.diag(_damping_matrix(params).ravel(order="F"))

    n2 = n * n
    matrix = np.zeros((2 * n2, 2 * n2))
    matrix[:n2, :n2] = -damping
    matrix[:n2, n2:] = coherent
    matrix[n2:, :n2] = -coherent
    matrix[n2:, n2:] = -damping
    return Superoperator(n_sites=n, matrix=matrix)


def reduce_state(rho: np.ndarray) -> ReducedVector:
    """Project a density matrix onto the five closed aggregates."""
    rho = np.asarray(rho, dtype=complex)
    trap_coherence = rho[:, -1].sum()
    return ReducedVector(
        rho_nn=float(rho[-1, -1].real),
        x=float(trap_coherence.real),
        y=float(trap_coherence.imag),
        sigma=float(rho.sum().real),
        t=float(np.trace(rho).real),
    )


def evolve(
    params: NetworkParams,
    rho0: np.ndarray,
    times: Sequence[float],
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> list[np.ndarray]:
    """Evolve a density matrix to each requested time by matrix exponential."""
    superop = build_superoperator(params, dimension_cap)
    states = _propagate(superop.matrix, vectorize(rho0), np.asarray(times, dtype=float))
    return [unvectorize(row, params.n_sites) for row in states]


def transport_full(params: NetworkParams, rho0: np.ndarray) -> TransportResult:
    """Efficiency and transfer time from resolvent solves on the full generator."""
    superop = build_superoperator(params)
    n = params.n_sites
    trap_index = (n - 1) + (n - 1) * n
    diagonal_indices = np.arange(n) * (n + 1)

    factors = LUFactorization(superop.matrix)
    first = factors.solve(vectorize(rho0))
    kappa = params.trap_rate
    efficiency = -2.0 * kappa * first[trap_index]
    decay_loss = -2.0 * params.decay_rate * first[diagonal_indices].sum()
    if kappa == 0.0:
        return TransportResult(0.0, None, 0.0, float(decay_loss), source="full")
    second = factors.solve(first)
    transfer_time = 2.0 * kappa * second[trap_index] / efficiency
    return TransportResult(
        efficiency=float(efficiency),
        transfer_time=float(transfer_time),
        rate=float(efficiency / transfer_time),
        decay_loss=float(decay_loss),
        source="full",
    )


def brute_force_eta_tau(
    params: NetworkParams, rho0: np.ndarray, rel_tol: float = 1e-6
) -> TransportResult:
    """Efficiency and transfer time by adaptive time integration.

    Independent of the resolvent path: integrates the Lindblad ODE with an
    embedded adaptive Runge-Kutta pair, accumulating the zeroth and first
    time moments of the trap population (and the decayed probability), until
    the surviving trace drops below 1e-12 or the horizon cap is hit.
    """
    if params.trap_rate == 0.0 and params.decay_rate == 0.0:
        raise SingularGenerator("kappa = Gamma = 0: transport integrals diverge")
    superop = build_superoperator(params)
    n = params.n_sites
    n2 = n * n
    generator = superop.matrix
    trap_index = (n - 1) + (n - 1) * n
    diagonal_indices = np.arange(n) * (n + 1)
    kappa = params.trap_rate
    gamma = params.decay_rate

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        dy = np.empty_like(y)
        dy[: 2 * n2] = generator @ y[: 2 * n2]
        trap_population = y[trap_index]
        trace = y[diagonal_indices].sum()
        dy[-3] = 2.0 * kappa * trap_population
        dy[-2] = 2.0 * kappa * t * trap_population
        dy[-1] = 2.0 * gamma * trace
        return dy

    def trace_depleted(t: float, y: np.ndarray) -> float:
        return y[diagonal_indices].sum() - TRACE_CUTOFF

    trace_depleted.terminal = True
    trace_depleted.direction = -1

    effective_rates = [r for r in (2.0 * gamma, 2.0 * kappa / n) if r > 0.0]
    t_cap = 1e3 / min(effective_rates)
    y0 = np.concatenate([vectorize(rho0), [0.0, 0.0, 0.0]])
    rtol = min(1e-10, rel_tol * 1e-4)
    solution = solve_ivp(
        rhs,
        (0.0, t_cap),
        y0,
        method="DOP853",
        rtol=rtol,
        atol=rtol * 1e-3,
        events=trace_depleted,
    )
    final = solution.y[:, -1]
    remaining_trace = final[diagonal_indices].sum()
    if not solution.t_events[0].size and remaining_trace > TRACE_RESIDUAL_LIMIT:
        raise HorizonExceeded(
            f"trace {remaining_trace:.3e} still unabsorbed at t_cap = {t_cap:.3e}"
        )
    trapped, first_moment, decayed = final[-3], final[-2], final[-1]
    if trapped == 0.0:
        return TransportResult(0.0, None, 0.0, float(decayed), source="brute_force")
    transfer_time = first_moment / trapped
    return TransportResult(
        efficiency=float(trapped),
        transfer_time=float(transfer_time),
        rate=float(trapped / transfer_time),
        decay_loss=float(decayed),
        source="brute_force",
    )
