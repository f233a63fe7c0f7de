"""Randomized equivalence batteries between the independent solver paths.

Each suite draws random networks and initial states from a seeded generator
and checks that two computational routes agree to a stated tolerance:
closed form against the reduced resolvent, the reduced system against the
full superoperator, and the resolvent formulas against brute-force time
integration.  The CLI ``validate`` command runs all suites and reports a
machine-readable summary.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from . import closed_form, lindblad, reduced
from .errors import SingularGenerator
from .model import NetworkParams, SymmetricSuperposition, reduced_initial_vector

DEFAULT_SEED = 1234


@dataclass(frozen=True)
class SuiteResult:
    name: str
    draws: int
    max_error: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def random_params(
    rng: np.random.Generator,
    n_range: tuple[int, int] = (2, 50),
    rate_range: tuple[float, float] = (1e-3, 1e3),
    delta_range: tuple[float, float] = (-1e3, 1e3),
) -> tuple[NetworkParams, int]:
    """Draw one network instance and a compatible superposition size."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    s = int(rng.integers(1, n))
    lo, hi = np.log10(rate_range[0]), np.log10(rate_range[1])
    kappa, gamma, lam = 10.0 ** rng.uniform(lo, hi, size=3)
    params = NetworkParams.from_detuning(
        n_sites=n,
        coupling=1.0,
        detuning=float(rng.uniform(*delta_range)),
        trap_rate=float(kappa),
        decay_rate=float(gamma),
        dephasing_rate=float(lam),
    )
    return params, s


def random_density_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart draw)."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def closed_vs_reduced(seed: int = DEFAULT_SEED, draws: int = 300) -> SuiteResult:
    """Closed-form eta and rate against the reduced resolvent, plus conservation."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params, s = random_params(rng)
        v0 = reduced_initial_vector(SymmetricSuperposition(s), params.n_sites)
        result = reduced.transport(params, v0)
        eta_cf = closed_form.efficiency_cf(params, s)
        rate_cf = closed_form.rate_cf(params, s)
        worst = max(
            worst,
            abs(result.efficiency - eta_cf) / eta_cf,
            abs(result.rate - rate_cf) / rate_cf,
            abs(result.efficiency + result.decay_loss - 1.0),
        )
    return SuiteResult("closed_vs_reduced", draws, float(worst), 1e-10, bool(worst <= 1e-10))


def _full_reduced_draws(seed: int, draws_per_size: int):
    rng = np.random.default_rng(seed)
    for n in range(2, 11):
        for _ in range(draws_per_size):
            params, _ = random_params(
                rng, n_range=(n, n), rate_range=(1e-2, 1e2), delta_range=(-100, 100)
            )
            yield params, random_density_matrix(rng, n)


def full_vs_reduced_transport(seed: int = DEFAULT_SEED, draws_per_size: int = 8) -> SuiteResult:
    """Full-superoperator eta and tau against the reduced resolvent."""
    worst = 0.0
    total = 0
    for params, rho0 in _full_reduced_draws(seed, draws_per_size):
        full = lindblad.transport_full(params, rho0)
        red = reduced.transport(params, lindblad.reduce_state(rho0))
        worst = max(
            worst,
            abs(full.efficiency - red.efficiency) / red.efficiency,
            abs(full.transfer_time - red.transfer_time) / red.transfer_time,
        )
        total += 1
    return SuiteResult("full_vs_reduced_transport", total, float(worst), 1e-8, bool(worst <= 1e-8))


def full_vs_reduced_trajectory(seed: int = DEFAULT_SEED, draws_per_size: int = 4) -> SuiteResult:
    """Evolving then reducing must equal reducing then evolving."""
    worst = 0.0
    total = 0
    for params, rho0 in _full_reduced_draws(seed, draws_per_size):
        n = params.n_sites
        t_char = 2.0 / (
            params.trap_rate
            + params.dephasing_rate
            + 2.0 * params.decay_rate
            + params.coupling * n
        )
        times = [0.0, 0.5 * t_char, t_char]
        evolved = lindblad.evolve(params, rho0, times)
        red_traj = reduced.trajectory(params, lindblad.reduce_state(rho0), times)
        worst = max(
            worst,
            max(
                np.abs(np.asarray(lindblad.reduce_state(r)) - np.asarray(v)).max()
                for r, v in zip(evolved, red_traj)
            ),
        )
        total += 1
    return SuiteResult("full_vs_reduced_trajectory", total, float(worst), 1e-9, bool(worst <= 1e-9))


def brute_vs_resolvent(seed: int = DEFAULT_SEED, draws: int = 5) -> SuiteResult:
    """Adaptive time integration against the resolvent formulas."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params, _ = random_params(rng, n_range=(2, 8), rate_range=(0.05, 5.0), delta_range=(-20, 20))
        rho0 = random_density_matrix(rng, params.n_sites)
        brute = lindblad.brute_force_eta_tau(params, rho0)
        full = lindblad.transport_full(params, rho0)
        worst = max(
            worst,
            abs(brute.efficiency - full.efficiency) / full.efficiency,
            abs(brute.transfer_time - full.transfer_time) / full.transfer_time,
        )
    return SuiteResult("brute_vs_resolvent", draws, float(worst), 1e-6, bool(worst <= 1e-6))


def limit_no_decay(seed: int = DEFAULT_SEED, draws: int = 50) -> SuiteResult:
    """With decay off, every excitation is eventually trapped."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params, s = random_params(rng, rate_range=(1e-2, 1e2), delta_range=(-100, 100))
        no_decay = replace(params, decay_rate=0.0)
        v0 = reduced_initial_vector(SymmetricSuperposition(s), params.n_sites)
        worst = max(worst, abs(reduced.transport(no_decay, v0).efficiency - 1.0))
    return SuiteResult("limit_no_decay", draws, float(worst), 1e-12, bool(worst <= 1e-12))


def limit_coherent(seed: int = DEFAULT_SEED, draws: int = 50) -> SuiteResult:
    """No dephasing and vanishing decay: eta tends to s/(N-1) at zero detuning."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        n = int(rng.integers(2, 51))
        s = int(rng.integers(1, n))
        params = NetworkParams.from_detuning(
            n, 1.0, 0.0, float(10.0 ** rng.uniform(np.log10(0.3), np.log10(30.0))), 1e-8, 0.0
        )
        eta = closed_form.efficiency_cf(params, s)
        expected = s / (n - 1)
        worst = max(worst, abs(eta - expected) / expected)
    return SuiteResult("limit_coherent", draws, float(worst), 1e-6, bool(worst <= 1e-6))


def limit_detuning_parity(seed: int = DEFAULT_SEED, draws: int = 50) -> SuiteResult:
    """Efficiency depends on the detuning only through its square."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params, s = random_params(rng, rate_range=(1e-2, 1e2), delta_range=(-100, 100))
        delta = params.trap_energy - params.coupling * (params.n_sites - 2)
        mirrored = replace(
            params, trap_energy=-delta + params.coupling * (params.n_sites - 2)
        )
        worst = max(
            worst,
            abs(closed_form.efficiency_cf(params, s) - closed_form.efficiency_cf(mirrored, s)),
        )
    return SuiteResult("limit_detuning_parity", draws, float(worst), 1e-12, bool(worst <= 1e-12))


def singular_guard() -> SuiteResult:
    """The no-absorption case must fail loudly, not return numbers."""
    params = NetworkParams(
        n_sites=5, coupling=1.0, trap_energy=0.0, trap_rate=0.0, decay_rate=0.0, dephasing_rate=1.0
    )
    v0 = reduced_initial_vector(SymmetricSuperposition(1), 5)
    try:
        reduced.transport(params, v0)
    except SingularGenerator:
        return SuiteResult("singular_guard", 1, 0.0, 0.0, True, detail="SingularGenerator raised")
    return SuiteResult("singular_guard", 1, 1.0, 0.0, False, detail="kappa=Gamma=0 did not raise")


def run_all(seed: int = DEFAULT_SEED) -> dict:
    """Run every battery; the summary is JSON-serializable."""
    suites = [
        closed_vs_reduced(seed),
        full_vs_reduced_transport(seed + 1),
        full_vs_reduced_trajectory(seed + 2),
        brute_vs_resolvent(seed + 3),
        limit_no_decay(seed + 4),
        limit_coherent(seed + 5),
        limit_detuning_parity(seed + 6),
        singular_guard(),
    ]
    return {
        "seed": seed,
        "suites": [s.as_dict() for s in suites],
        "all_passed": all(s.passed for s in suites),
    }
