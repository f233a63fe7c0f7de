"""Closed-form transport expressions for the fully connected network.

The efficiency is ``1 / (alpha1 + alpha2 * (Delta/J)^2)`` and the transfer
rate ``2*kappa / (beta1 + beta2 * (Delta/J)^2)``, with coefficients that are
rational functions of the rates.  The general coefficient functions here are
exact for the symmetric s-site superposition initial state at any network
size; the limit-regime variants implement the independently printed special
cases so each can be tested against the other.
"""
from __future__ import annotations

from dataclasses import replace
from math import sqrt
from typing import NamedTuple

from .errors import DegenerateDenominator
from .model import NetworkParams, TransportResult, detuning


class EffCoefficients(NamedTuple):
    alpha1: float
    alpha2: float


class RateCoefficients(NamedTuple):
    beta1: float
    beta2: float


class CoherentRate(NamedTuple):
    rate: float
    kappa_star: float
    rate_max: float


class OptimalConditions(NamedTuple):
    """Joint stationary point of the decay-free rate over (kappa, lambda)."""

    c_ratio: float
    kappa_opt: float
    lambda_opt: float
    rate_opt: float


def _shared_rates(params: NetworkParams, s: int) -> tuple[float, float, float, float, float]:
    if not (1 <= s <= params.n_sites - 1):
        raise ValueError("s must satisfy 1 <= s <= N-1")
    kappa = params.trap_rate
    gamma = params.decay_rate
    lam = params.dephasing_rate
    pooled = lam + 2.0 * s * gamma
    if pooled <= 0.0:
        raise DegenerateDenominator(
            "lambda + 2*s*Gamma = 0: the general coefficients are 0/0; "
            "use the dedicated no-dephasing / coherent limit functions"
        )
    return kappa, gamma, lam, pooled, params.coupling


def alpha_coeffs(params: NetworkParams, s: int) -> EffCoefficients:
    """General efficiency coefficients for the s-site superposition start."""
    kappa, gamma, lam, pooled, j = _shared_rates(params, s)
    if kappa <= 0.0:
        raise DegenerateDenominator("kappa = 0: efficiency coefficients are undefined")
    n = params.n_sites
    alpha1 = (
        lam * (kappa + n * gamma) + 2.0 * (n - 1) * gamma * (kappa + 2.0 * gamma)
    ) / (kappa * pooled) + gamma * (kappa + gamma) * (lam + 2.0 * gamma) * (
        kappa + lam + 2.0 * gamma
    ) / (j * j * kappa * pooled)
    alpha2 = (
        gamma
        * (kappa + gamma)
        * (lam + 2.0 * gamma)
        / (kappa * (kappa + lam + 2.0 * gamma) * pooled)
    )
    return EffCoefficients(alpha1, alpha2)


def efficiency_cf(params: NetworkParams, s: int) -> float:
    """Total trapped probability, exact for the superposition start."""
    alpha1, alpha2 = alpha_coeffs(params, s)
    delta = detuning(params)
    j = params.coupling
    return 1.0 / (alpha1 + alpha2 * delta * delta / (j * j))


def beta_coeffs(params: NetworkParams, s: int) -> RateCoefficients:
    """General transfer-rate coefficients for the s-site superposition start."""
    kappa, gamma, lam, pooled, j = _shared_rates(params, s)
    n = params.n_sites
    j2 = j * j
    beta1 = (
        (
            2.0 * (n - s - 1) * kappa * lam
            + n * lam * lam
            + 8.0 * (n - 1) * gamma * (lam + s * gamma)
        )
        / (pooled * pooled)
        + gamma
        * (
            (kappa + gamma) * (2.0 * kappa + 4.0 * lam + 8.0 * gamma)
            + (lam + 2.0 * gamma) * (kappa + lam + 2.0 * gamma)
        )
        / (j2 * pooled)
        + lam
        * (lam + 2.0 * gamma)
        * (kappa + gamma)
        * (kappa + lam + 2.0 * gamma)
        / (j2 * pooled * pooled)
    )
    beta2 = (
        lam * (lam + 2.0 * gamma) * (kappa + gamma) / ((kappa + lam + 2.0 * gamma) * pooled * pooled)
        + 2.0 * gamma * kappa * (kappa + gamma) / ((kappa + lam + 2.0 * gamma) ** 2 * pooled)
        + gamma * (lam + 2.0 * gamma) / ((kappa + lam + 2.0 * gamma) * pooled)
    )
    return RateCoefficients(beta1, beta2)


def rate_cf(params: NetworkParams, s: int) -> float:
    """Overall transfer rate (efficiency per unit transfer time)."""
    beta1, beta2 = beta_coeffs(params, s)
    delta = detuning(params)
    j = params.coupling
    return 2.0 * params.trap_rate / (beta1 + beta2 * delta * delta / (j * j))


def transfer_time_cf(params: NetworkParams, s: int) -> float:
    """Mean trapping time; efficiency divided by the rate."""
    return efficiency_cf(params, s) / rate_cf(params, s)


def transport_cf(params: NetworkParams, s: int) -> TransportResult:
    """All transport figures of merit from the closed forms.

    Decay loss is 1 - eta: trapping and decay are the only channels, so
    conservation is exact by construction here.
    """
    eta = efficiency_cf(params, s)
    rate = rate_cf(params, s)
    return TransportResult(
        efficiency=eta,
        transfer_time=eta / rate,
        rate=rate,
        decay_loss=1.0 - eta,
        source="closed_form",
    )


# --- printed limit regimes, kept separate so the general forms and the
# --- special cases check each other

def alpha_coeffs_no_dephasing(params: NetworkParams, s: int) -> EffCoefficients:
    """Efficiency coefficients with dephasing switched off."""
    kappa = params.trap_rate
    gamma = params.decay_rate
    if kappa <= 0.0 or gamma <= 0.0:
        raise DegenerateDenominator("no-dephasing limit needs kappa > 0 and Gamma > 0")
    n = params.n_sites
    ratio = gamma / kappa
    j2 = params.coupling**2
    alpha1 = (n - 1) / s * (1.0 + 2.0 * ratio) + kappa * gamma / (s * j2) * (1.0 + ratio) * (
        1.0 + 2.0 * ratio
    )
    alpha2 = gamma / (s * kappa) * (1.0 + ratio) / (1.0 + 2.0 * ratio)
    return EffCoefficients(alpha1, alpha2)


def alpha_coeffs_no_decay() -> EffCoefficients:
    """Without excitation loss every excitation is eventually trapped."""
    return EffCoefficients(1.0, 0.0)


def alpha_coeffs_two_site(params: NetworkParams) -> EffCoefficients:
    """Printed two-site special case (single-site start)."""
    kappa = params.trap_rate
    gamma = params.decay_rate
    lam = params.dephasing_rate
    j2 = params.coupling**2
    if kappa <= 0.0:
        raise DegenerateDenominator("kappa = 0: efficiency coefficients are undefined")
    alpha1 = (kappa + 2.0 * gamma) / kappa + gamma * (kappa + gamma) * (
        kappa + lam + 2.0 * gamma
    ) / (j2 * kappa)
    alpha2 = gamma * (kappa + gamma) / (kappa * (kappa + lam + 2.0 * gamma))
    return EffCoefficients(alpha1, alpha2)


def beta_coeffs_no_dephasing(params: NetworkParams, s: int) -> RateCoefficients:
    """Rate coefficients with dephasing switched off."""
    kappa = params.trap_rate
    gamma = params.decay_rate
    if gamma <= 0.0 or kappa <= 0.0:
        raise DegenerateDenominator("no-dephasing limit needs Gamma > 0 and kappa > 0")
    n = params.n_sites
    ratio = gamma / kappa
    j2 = params.coupling**2
    beta1 = 2.0 * (n - 1) / s + (kappa * kappa / (s * j2)) * (
        1.0 + 6.0 * ratio + 6.0 * ratio * ratio
    )
    beta2 = (1.0 / s) * (1.0 + 2.0 * ratio) ** -2 * (1.0 + 2.0 * ratio + 2.0 * ratio * ratio)
    return RateCoefficients(beta1, beta2)


def beta_coeffs_no_decay(params: NetworkParams, s: int) -> RateCoefficients:
    """Rate coefficients without excitation loss."""
    kappa = params.trap_rate
    lam = params.dephasing_rate
    if lam <= 0.0:
        raise DegenerateDenominator("no-decay limit needs lambda > 0")
    n = params.n_sites
    beta1 = 2.0 * (n - s - 1) * kappa / lam + n + kappa * (kappa + lam) / params.coupling**2
    beta2 = kappa / (kappa + lam)
    return RateCoefficients(beta1, beta2)


def coherent_rate(params: NetworkParams, s: int) -> CoherentRate:
    """Fully coherent transfer rate (no dephasing, vanishing decay).

    Returns the rate at the given trapping rate, the trapping rate that
    maximizes it, and that maximal rate.  With the superposition spanning
    all non-trap sites and zero detuning this regime reproduces
    continuous-time quantum search, rate scaling as J*sqrt(N).
    """
    n = params.n_sites
    j2 = params.coupling**2
    delta = detuning(params)
    kappa = params.trap_rate
    rate = 2.0 * s * kappa / (2.0 * (n - 1) + (delta * delta + kappa * kappa) / j2)
    kappa_star = sqrt(2.0 * (n - 1) * j2 + delta * delta)
    rate_max = s * j2 / kappa_star
    return CoherentRate(rate, kappa_star, rate_max)


def weak_decay_efficiency(params: NetworkParams, s: int) -> float:
    """First-order slow-decay approximation: 1 / (1 + 2*Gamma / R0).

    R0 is the transfer rate evaluated with the decay switched off (the
    coherent-limit rate when there is also no dephasing).
    """
    no_decay = replace(params, decay_rate=0.0)
    if params.dephasing_rate > 0.0:
        rate0 = rate_cf(no_decay, s)
    else:
        rate0 = coherent_rate(no_decay, s).rate
    return 1.0 / (1.0 + 2.0 * params.decay_rate / rate0)


def coherent_efficiency_max(
    n_sites: int, coupling: float, delta: float, decay_rate: float
) -> float:
    """Peak efficiency of the fully coherent regime (all-site superposition).

    Evaluated at the rate-maximizing trapping rate; exact as the decay rate
    tends to zero.
    """
    rate_max = (
        (n_sites - 1) * coupling**2 / sqrt(2.0 * (n_sites - 1) * coupling**2 + delta * delta)
    )
    return 1.0 / (1.0 + 2.0 * decay_rate / rate_max)


def enaqt_optimum(n_sites: int, coupling: float, delta: float = 0.0) -> OptimalConditions:
    """Dephasing-assisted optimum of the decay-free, single-site-start rate.

    The two stationarity conditions force lambda = C*kappa with
    C = sqrt(2(N-2)/N); substituting back yields closed forms for the
    optimal rates.  Exact for the decay-free rate; an excellent
    approximation to the efficiency optimum at slow decay.
    """
    c_ratio = sqrt(2.0 * (n_sites - 2) / n_sites)
    j2 = coupling * coupling
    kappa_opt = sqrt(n_sites * j2 + delta * delta / (1.0 + c_ratio) ** 2)
    lambda_opt = c_ratio * kappa_opt
    rate_opt = j2 / sqrt((1.0 + c_ratio) ** 2 * n_sites * j2 + delta * delta)
    return OptimalConditions(c_ratio, kappa_opt, lambda_opt, rate_opt)


def stationarity_residuals(
    n_sites: int, coupling: float, delta: float, kappa: float, lam: float
) -> tuple[float, float]:
    """Scaled partial derivatives of the decay-free rate; zero at its optimum.

    Returns the kappa-stationarity and lambda-stationarity residuals.  Their
    isolated roots recover the known single-knob optima: trapping alone
    peaks at sqrt(N*J^2 + Delta^2), dephasing alone at
    sqrt(2(N-2)*J^2 + Delta^2).
    """
    if kappa <= 0.0 or lam <= 0.0:
        raise ValueError("stationarity residuals need kappa > 0 and lambda > 0")
    j2 = coupling * coupling
    shared = delta * delta / (kappa + lam) ** 2
    residual_kappa = n_sites * j2 / (kappa * kappa) - 1.0 + shared
    residual_lambda = 2.0 * (n_sites - 2) * j2 / (lam * lam) - 1.0 + shared
    return residual_kappa, residual_lambda
