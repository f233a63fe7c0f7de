import numpy as np
import pytest

from enaqt_fcn import (
    DegenerateDenominator,
    SymmetricSuperposition,
    alpha_coeffs,
    beta_coeffs,
    brute_force_eta_tau,
    coherent_efficiency_max,
    coherent_rate,
    efficiency_cf,
    enaqt_optimum,
    rate_cf,
    reduced_initial_vector,
    stationarity_residuals,
    superposition_density_matrix,
    transfer_time_cf,
    transport,
    transport_cf,
    weak_decay_efficiency,
)
from conftest import make_params
from enaqt_fcn.closed_form import (
    alpha_coeffs_no_decay,
    alpha_coeffs_no_dephasing,
    alpha_coeffs_two_site,
    beta_coeffs_no_decay,
    beta_coeffs_no_dephasing,
)


def random_params_and_s(rng, rate_lo=1e-3, rate_hi=1e3):
    n = int(rng.integers(2, 51))
    s = int(rng.integers(1, n))
    kappa, gamma, lam = 10.0 ** rng.uniform(np.log10(rate_lo), np.log10(rate_hi), size=3)
    return (
        make_params(n=n, delta=float(rng.uniform(-1e3, 1e3)), kappa=kappa, gamma=gamma, lam=lam),
        s,
    )


class TestAlphaCoeffs:
    def test_no_dephasing_printed_form_matches_general(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 30))
            s = int(rng.integers(1, n))
            params = make_params(
                n=n, delta=0.0, kappa=10.0 ** rng.uniform(-2, 2),
                gamma=10.0 ** rng.uniform(-2, 2), lam=0.0,
            )
            general = alpha_coeffs(params, s)
            printed = alpha_coeffs_no_dephasing(params, s)
            assert general.alpha1 == pytest.approx(printed.alpha1, rel=1e-12)
            assert general.alpha2 == pytest.approx(printed.alpha2, rel=1e-12)

    def test_no_decay_limit(self, rng):
        for _ in range(20):
            params, s = random_params_and_s(rng)
            no_decay = make_params(
                n=params.n_sites, delta=1.0, kappa=params.trap_rate,
                gamma=0.0, lam=params.dephasing_rate,
            )
            assert alpha_coeffs(no_decay, s) == pytest.approx((1.0, 0.0), abs=1e-15)
        assert alpha_coeffs_no_decay() == (1.0, 0.0)

    def test_two_site_printed_form_matches_general(self, rng):
        for _ in range(30):
            params = make_params(
                n=2, delta=float(rng.uniform(-10, 10)),
                kappa=10.0 ** rng.uniform(-2, 2),
                gamma=10.0 ** rng.uniform(-2, 2),
                lam=10.0 ** rng.uniform(-2, 2),
            )
            general = alpha_coeffs(params, 1)
            printed = alpha_coeffs_two_site(params)
            assert general.alpha1 == pytest.approx(printed.alpha1, rel=1e-12)
            assert general.alpha2 == pytest.approx(printed.alpha2, rel=1e-12)

    def test_degenerate_denominators(self):
        with pytest.raises(DegenerateDenominator):
            alpha_coeffs(make_params(gamma=1.0, lam=1.0, kappa=0.0), 1)
        with pytest.raises(DegenerateDenominator):
            alpha_coeffs(make_params(gamma=0.0, lam=0.0, kappa=1.0), 1)

    def test_coefficient_signs(self, rng):
        for _ in range(100):
            params, _ = random_params_and_s(rng)
            coeffs = alpha_coeffs(params, 1)
            assert coeffs.alpha1 >= 1.0
            assert coeffs.alpha2 >= 0.0


class TestEfficiency:
    def test_interior_optimum_value(self, detuned_landscape_params):
        assert efficiency_cf(detuned_landscape_params, 1) == pytest.approx(0.33, abs=0.005)

    def test_zero_detuning_optimum_value(self):
        params = make_params(delta=0.0, kappa=4.5, gamma=0.01, lam=6.0)
        assert efficiency_cf(params, 1) == pytest.approx(0.83, abs=0.005)

    def test_coherent_limit_single_site(self):
        params = make_params(delta=0.0, kappa=1.0, gamma=1e-8, lam=0.0)
        assert efficiency_cf(params, 1) == pytest.approx(1 / 19, rel=1e-6)

    def test_in_unit_interval(self, rng):
        for _ in range(200):
            params, s = random_params_and_s(rng)
            assert 0.0 < efficiency_cf(params, s) <= 1.0

    def test_monotone_decreasing_in_detuning_magnitude(self, rng):
        for _ in range(30):
            params, s = random_params_and_s(rng, rate_lo=1e-2, rate_hi=1e2)
            deltas = [0.0, 5.0, 20.0, 100.0]
            values = [
                efficiency_cf(make_params(
                    n=params.n_sites, delta=d, kappa=params.trap_rate,
                    gamma=params.decay_rate, lam=params.dephasing_rate,
                ), s)
                for d in deltas
            ]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_order_of_limits_matters(self):
        # decay off first: unit efficiency at any dephasing
        no_decay = make_params(delta=0.0, kappa=2.0, gamma=0.0, lam=7.0)
        assert efficiency_cf(no_decay, 1) == pytest.approx(1.0, abs=1e-15)
        # dephasing off first, then decay to zero: s/(N-1)
        coherent = make_params(delta=0.0, kappa=2.0, gamma=1e-10, lam=0.0)
        for s in (1, 7, 19):
            assert efficiency_cf(coherent, s) == pytest.approx(s / 19, rel=1e-6)


class TestBetaCoeffs:
    def test_no_decay_printed_form_matches_general(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 30))
            s = int(rng.integers(1, n))
            params = make_params(
                n=n, delta=0.0, kappa=10.0 ** rng.uniform(-2, 2),
                gamma=0.0, lam=10.0 ** rng.uniform(-2, 2),
            )
            general = beta_coeffs(params, s)
            printed = beta_coeffs_no_decay(params, s)
            assert general.beta1 == pytest.approx(printed.beta1, rel=1e-12)
            assert general.beta2 == pytest.approx(printed.beta2, rel=1e-12)

    def test_no_dephasing_printed_form_matches_general(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 30))
            s = int(rng.integers(1, n))
            params = make_params(
                n=n, delta=0.0, kappa=10.0 ** rng.uniform(-2, 2),
                gamma=10.0 ** rng.uniform(-2, 2), lam=0.0,
            )
            general = beta_coeffs(params, s)
            printed = beta_coeffs_no_dephasing(params, s)
            assert general.beta1 == pytest.approx(printed.beta1, rel=1e-12)
            assert general.beta2 == pytest.approx(printed.beta2, rel=1e-12)

    def test_coefficient_signs(self, rng):
        for _ in range(100):
            params, s = random_params_and_s(rng)
            coeffs = beta_coeffs(params, s)
            assert coeffs.beta1 > 0.0
            assert coeffs.beta2 >= 0.0

    def test_degenerate_denominator(self):
        with pytest.raises(DegenerateDenominator):
            beta_coeffs(make_params(gamma=0.0, lam=0.0), 1)


class TestRate:
    def test_zero_trapping_rate(self):
        assert rate_cf(make_params(kappa=0.0), 1) == 0.0

    def test_matches_reduced_transport(self, rng):
        for _ in range(100):
            params, s = random_params_and_s(rng)
            v0 = reduced_initial_vector(SymmetricSuperposition(s), params.n_sites)
            result = transport(params, v0)
            assert rate_cf(params, s) == pytest.approx(result.rate, rel=1e-10)
            assert efficiency_cf(params, s) == pytest.approx(result.efficiency, rel=1e-10)
            assert transfer_time_cf(params, s) == pytest.approx(result.transfer_time, rel=1e-10)

    def test_transport_bundle(self, rng):
        for _ in range(20):
            params, s = random_params_and_s(rng)
            bundle = transport_cf(params, s)
            assert bundle.source == "closed_form"
            assert bundle.efficiency == efficiency_cf(params, s)
            assert bundle.rate == rate_cf(params, s)
            assert bundle.efficiency + bundle.decay_loss == 1.0
            red = transport(params, reduced_initial_vector(SymmetricSuperposition(s), params.n_sites))
            assert bundle.transfer_time == pytest.approx(red.transfer_time, rel=1e-10)

    def test_three_site_no_decay_agreement_of_paths(self, rng):
        for _ in range(20):
            params = make_params(
                n=3, delta=float(rng.uniform(-20, 20)),
                kappa=10.0 ** rng.uniform(-1, 1), gamma=0.0, lam=10.0 ** rng.uniform(-1, 1),
            )
            general = rate_cf(params, 1)
            beta1, beta2 = beta_coeffs_no_decay(params, 1)
            d = params.trap_energy - params.coupling
            printed = 2 * params.trap_rate / (beta1 + beta2 * d * d)
            assert general == pytest.approx(printed, rel=1e-12)


class TestCoherentRate:
    def test_all_site_superposition_maximum(self):
        params = make_params(n=20, delta=0.0, kappa=1.0, gamma=0.0, lam=0.0)
        result = coherent_rate(params, 19)
        assert result.rate_max == pytest.approx(19 / np.sqrt(38), rel=1e-12)
        assert result.kappa_star == pytest.approx(np.sqrt(38), rel=1e-12)

    def test_rate_peaks_at_kappa_star(self):
        base = make_params(n=20, delta=3.0, kappa=1.0, gamma=0.0, lam=0.0)
        star = coherent_rate(base, 5).kappa_star
        peak = coherent_rate(make_params(n=20, delta=3.0, kappa=star, gamma=0.0, lam=0.0), 5)
        assert peak.rate == pytest.approx(peak.rate_max, rel=1e-12)
        for kappa in (0.5 * star, 0.9 * star, 1.1 * star, 2.0 * star):
            probe = coherent_rate(make_params(n=20, delta=3.0, kappa=kappa, gamma=0.0, lam=0.0), 5)
            assert probe.rate < peak.rate_max

    def test_large_detuning_suppression(self):
        small = coherent_rate(make_params(n=20, delta=1e4, kappa=1.0, gamma=0.0, lam=0.0), 5)
        assert small.rate_max == pytest.approx(5 / 1e4, rel=1e-3)
        assert small.rate_max < 1e-3

    def test_two_site(self):
        params = make_params(n=2, delta=0.0, kappa=1.0, gamma=0.0, lam=0.0)
        result = coherent_rate(params, 1)
        assert result.kappa_star == pytest.approx(np.sqrt(2), rel=1e-14)
        assert result.rate_max == pytest.approx(1 / np.sqrt(2), rel=1e-14)

    def test_two_site_value_against_brute_force(self):
        # R = 2*2 / (2 + 4) = 2/3 at kappa=2, checked against time integration
        params = make_params(n=2, delta=0.0, kappa=2.0, gamma=0.0, lam=0.0)
        assert coherent_rate(params, 1).rate == pytest.approx(2 / 3, rel=1e-14)
        nearly = make_params(n=2, delta=0.0, kappa=2.0, gamma=1e-8, lam=0.0)
        brute = brute_force_eta_tau(nearly, superposition_density_matrix(1, 2))
        assert brute.rate == pytest.approx(2 / 3, rel=1e-6)


class TestWeakDecay:
    def test_exact_at_zero_decay(self):
        params = make_params(gamma=0.0)
        assert weak_decay_efficiency(params, 1) == 1.0

    def test_near_exact_in_slow_decay_regime(self, detuned_landscape_params):
        approx = weak_decay_efficiency(detuned_landscape_params, 1)
        exact = efficiency_cf(detuned_landscape_params, 1)
        assert abs(approx - exact) < 0.01

    def test_half_rate_identity(self):
        params = make_params(n=10, delta=5.0, kappa=2.0, gamma=0.0, lam=3.0)
        rate0 = rate_cf(params, 1)
        half = make_params(n=10, delta=5.0, kappa=2.0, gamma=rate0 / 2, lam=3.0)
        assert weak_decay_efficiency(half, 1) == pytest.approx(0.5, rel=1e-14)

    def test_error_vanishes_at_least_linearly(self):
        gammas = np.array([1e-2, 1e-3, 1e-4, 1e-5])
        diffs = []
        for gamma in gammas:
            params = make_params(delta=100.0, kappa=44.0, gamma=gamma, lam=56.0)
            diffs.append(abs(efficiency_cf(params, 1) - weak_decay_efficiency(params, 1)))
        slope = np.polyfit(np.log(gammas), np.log(diffs), 1)[0]
        assert slope > 0.9


class TestCoherentEfficiencyMax:
    def test_zero_detuning_value(self):
        value = coherent_efficiency_max(20, 1.0, 0.0, 0.01)
        assert value == pytest.approx(1.0 / (1.0 + 0.02 * np.sqrt(38) / 19), rel=1e-12)
        assert value == pytest.approx(0.9935, abs=5e-4)

    def test_no_decay_gives_unity(self):
        assert coherent_efficiency_max(20, 1.0, 50.0, 0.0) == 1.0

    def test_matches_exact_boundary_optimum(self):
        # all-site superposition, no dephasing, domain-edge trapping
        params = make_params(delta=100.0, kappa=100.0, gamma=0.01, lam=0.0)
        assert efficiency_cf(params, 19) == pytest.approx(0.9, abs=0.01)


class TestOptimalConditions:
    def test_large_detuning_point(self):
        opt = enaqt_optimum(20, 1.0, 100.0)
        assert opt.c_ratio == pytest.approx(1.34164, abs=1e-5)
        assert opt.kappa_opt == pytest.approx(42.9, abs=0.1)
        assert opt.lambda_opt == pytest.approx(57.6, abs=0.1)
        assert opt.lambda_opt == opt.c_ratio * opt.kappa_opt

    def test_zero_detuning_point(self):
        opt = enaqt_optimum(20, 1.0, 0.0)
        assert opt.kappa_opt == pytest.approx(np.sqrt(20), rel=1e-14)
        assert opt.kappa_opt == pytest.approx(4.47, abs=0.01)
        assert opt.lambda_opt == pytest.approx(6.0, abs=0.01)
        assert opt.rate_opt == pytest.approx(0.0955, abs=1e-4)

    def test_residuals_vanish_at_optimum(self):
        for n in (3, 10, 20, 50):
            for delta in (0.0, 10.0, 100.0):
                opt = enaqt_optimum(n, 1.0, delta)
                res_k, res_l = stationarity_residuals(n, 1.0, delta, opt.kappa_opt, opt.lambda_opt)
                assert abs(res_k) < 1e-12
                assert abs(res_l) < 1e-12

    def test_single_knob_roots(self):
        n, delta = 20, 30.0
        kappa_alone = np.sqrt(n + delta * delta)
        res_k, _ = stationarity_residuals(n, 1.0, delta, kappa_alone, 1e-9)
        assert abs(res_k) < 1e-9
        lambda_alone = np.sqrt(2 * (n - 2) + delta * delta)
        _, res_l = stationarity_residuals(n, 1.0, delta, 1e-9, lambda_alone)
        assert abs(res_l) < 1e-9

    def test_finite_difference_stationarity(self):
        for n, delta in ((10, 0.0), (20, 100.0), (50, 10.0)):
            opt = enaqt_optimum(n, 1.0, delta)

            def rate0(kappa, lam):
                params = make_params(n=n, delta=delta, kappa=kappa, gamma=0.0, lam=lam)
                return rate_cf(params, 1)

            hk = 1e-6 * opt.kappa_opt
            hl = 1e-6 * opt.lambda_opt
            d_kappa = (rate0(opt.kappa_opt + hk, opt.lambda_opt) - rate0(opt.kappa_opt - hk, opt.lambda_opt)) / (2 * hk)
            d_lambda = (rate0(opt.kappa_opt, opt.lambda_opt + hl) - rate0(opt.kappa_opt, opt.lambda_opt - hl)) / (2 * hl)
            scale = opt.rate_opt / opt.kappa_opt
            assert abs(d_kappa) / scale < 1e-6
            assert abs(d_lambda) / (opt.rate_opt / opt.lambda_opt) < 1e-6

    def test_degenerate_two_site_ratio(self):
        opt = enaqt_optimum(2, 1.0, 0.0)
        assert opt.c_ratio == 0.0
        assert opt.lambda_opt == 0.0
