"""Physical parameters, initial conditions, and result containers.

The network is a complete graph of ``n_sites`` sites with uniform coupling,
a single energy-shifted trap site (the last index), uniform excitation
decay, and uniform pure dephasing.  All rates are in units where hbar = 1;
setting ``coupling = 1`` expresses everything in units of the hopping rate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True)
class NetworkParams:
    """One fully connected network instance.

    Attributes:
        n_sites: number of sites N (the trap is site N, index N-1).
        coupling: uniform hopping rate J between every pair of sites.
        trap_energy: on-site energy of the trap site; all other sites sit at 0.
        trap_rate: irreversible absorption rate kappa at the trap site.
        decay_rate: uniform excitation loss rate Gamma on every site.
        dephasing_rate: uniform pure-dephasing rate lambda on every site.
    """

    n_sites: int
    coupling: float
    trap_energy: float
    trap_rate: float
    decay_rate: float
    dephasing_rate: float

    @classmethod
    def from_detuning(
        cls,
        n_sites: int,
        coupling: float,
        detuning: float,
        trap_rate: float,
        decay_rate: float,
        dephasing_rate: float,
    ) -> "NetworkParams":
        """Build params from the trap detuning instead of the raw trap energy.

        The trap energy is the canonical stored quantity; the detuning is
        always recomputed as ``trap_energy - coupling * (n_sites - 2)``.
        """
        return cls(
            n_sites=n_sites,
            coupling=coupling,
            trap_energy=detuning + coupling * (n_sites - 2),
            trap_rate=trap_rate,
            decay_rate=decay_rate,
            dephasing_rate=dephasing_rate,
        )


@dataclass(frozen=True)
class SymmetricSuperposition:
    """Equal-amplitude pure state over the first ``s`` non-trap sites."""

    s: int


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Arbitrary initial density matrix over the N sites."""

    rho0: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rho0", np.asarray(self.rho0, dtype=complex))


InitialCondition = Union[SymmetricSuperposition, DensityMatrix]


class ReducedVector(NamedTuple):
    """The five aggregates that close the equations of motion.

    ``rho_nn`` is the trap population, ``x + i*y`` the summed coherence with
    the trap site, ``sigma`` the all-elements sum of the density matrix, and
    ``t`` its trace.
    """

    rho_nn: float
    x: float
    y: float
    sigma: float
    t: float


@dataclass(frozen=True)
class TransportResult:
    """Transport figures of merit from one computational path.

    ``transfer_time`` is None when no probability is ever trapped
    (kappa = 0 makes the mean transfer time 0/0).  ``source`` records which
    solver produced the numbers: "full", "reduced", "closed_form", or
    "brute_force".
    """

    efficiency: float
    transfer_time: float | None
    rate: float
    decay_loss: float
    source: str


def detuning(params: NetworkParams) -> float:
    """Energy mismatch between the trap level and the symmetric manifold."""
    return params.trap_energy - params.coupling * (params.n_sites - 2)


def validate(params: NetworkParams, init: InitialCondition | None = None) -> list[str]:
    """Collect every violated invariant; an empty list means valid.

    Violations are data, not exceptions: sweep drivers and the CLI report
    them without unwinding.
    """
    violations = []
    n = params.n_sites
    if n < 2:
        violations.append("n_sites must be >= 2")
    if not (params.coupling > 0):
        violations.append("coupling must be > 0")
    if not np.isfinite(params.trap_energy):
        violations.append("trap_energy must be finite")
    if not (params.trap_rate >= 0):
        violations.append("trap_rate must be >= 0")
    if not (params.decay_rate >= 0):
        violations.append("decay_rate must be >= 0")
    if not (params.dephasing_rate >= 0):
        violations.append("dephasing_rate must be >= 0")
    if params.trap_rate == 0 and params.decay_rate == 0:
        violations.append(
            "no absorption: efficiency undefined (trap_rate = decay_rate = 0 "
            "leaves probability in the excited manifold forever)"
        )

    if isinstance(init, SymmetricSuperposition):
        if not (1 <= init.s <= n - 1):
            violations.append("s must satisfy 1 <= s <= N-1")
    elif isinstance(init, DensityMatrix):
        rho = init.rho0
        if rho.shape != (n, n):
            violations.append(f"rho0 must be {n}x{n}, got {rho.shape}")
        else:
            if np.abs(rho - rho.conj().T).max() > HERMITICITY_TOL:
                violations.append("rho0 must be Hermitian")
            if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
                violations.append("rho0 must have unit trace")
            else:
                eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
                if eigs.min() < EIGENVALUE_FLOOR:
                    violations.append("rho0 must be positive semidefinite")
    return violations


def superposition_density_matrix(s: int, n_sites: int) -> np.ndarray:
    """Projector onto the equal superposition of the first ``s`` sites."""
    rho = np.zeros((n_sites, n_sites), dtype=complex)
    rho[:s, :s] = 1.0 / s
    return rho


def reduced_initial_vector(init: InitialCondition, n_sites: int) -> ReducedVector:
    """Map an initial condition into the closed five-variable representation.

    A symmetric superposition of s sites carries no trap population and no
    trap coherence, so only the coherence sum (= s) and the trace survive.
    """
    if isinstance(init, SymmetricSuperposition):
        if not (1 <= init.s <= n_sites - 1):
            raise ValueError("s must satisfy 1 <= s <= N-1")
        return ReducedVector(0.0, 0.0, 0.0, float(init.s), 1.0)
    rho = init.rho0
    if rho.shape != (n_sites, n_sites):
        raise ValueError(f"rho0 must be {n_sites}x{n_sites}, got {rho.shape}")
    trap_coherence = rho[:, -1].sum()
    return ReducedVector(
        rho_nn=float(rho[-1, -1].real),
        x=float(trap_coherence.real),
        y=float(trap_coherence.imag),
        sigma=float(rho.sum().real),
        t=float(np.trace(rho).real),
    )
