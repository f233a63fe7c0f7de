import numpy as np
import pytest

from enaqt_fcn import NetworkParams


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def make_params(n=20, j=1.0, delta=100.0, kappa=44.0, gamma=0.01, lam=56.0):
    return NetworkParams.from_detuning(
        n_sites=n,
        coupling=j,
        detuning=delta,
        trap_rate=kappa,
        decay_rate=gamma,
        dephasing_rate=lam,
    )


def random_density_matrix(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def detuned_landscape_params():
    """N=20 landscape with the interior dephasing-assisted optimum."""
    return make_params()
