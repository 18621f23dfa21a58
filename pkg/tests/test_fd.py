import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bargmann_ritz import closed_forms as cf
from bargmann_ritz.fd import (FDError, Grid1D, fd_ground_energy, fd_hamiltonian, fd_levels,
                              richardson_ratio, sturm_count, tridiag_eigen)
from bargmann_ritz.models import cubic_quartic, harmonic, power2n, quartic
from bargmann_ritz.optimize import displaced_coherent_minimum, minimize_displaced
from bargmann_ritz.ritz import converged_spectrum
from bargmann_ritz.trials import PositionGaussian


def test_tridiag_small_cases():
    assert np.allclose(tridiag_eigen([2.0, 2.0], [-1.0], 2), [1, 3], atol=1e-12)
    assert np.allclose(tridiag_eigen([4.2], [], 1), [4.2])


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.integers(0, 2**31 - 1))
def test_tridiag_matches_lapack(m, seed):
    rng = np.random.default_rng(seed)
    d = rng.normal(size=m)
    e = rng.normal(size=m - 1)
    k = min(m, 4)
    ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))[:k]
    assert np.allclose(tridiag_eigen(d, e, k), ref, atol=1e-11)


def test_sturm_count_monotone():
    d, e = fd_hamiltonian(quartic(0.1), Grid1D(6.0, 200))
    counts = sturm_count(d, e, np.linspace(0, 20, 50))
    assert np.all(np.diff(counts) >= 0)


def test_harmonic_levels():
    g = Grid1D(8.0, 1024)
    # raw three-point error is about h^2 / 32 for the ground state
    assert abs(fd_levels(harmonic(), g)[0] - 0.5) < g.h**2 / 16
    assert fd_ground_energy(harmonic(), L=8.0, m=1024) == pytest.approx(0.5, abs=1e-6)
    assert np.allclose(fd_levels(harmonic(), g, 3), [0.5, 1.5, 2.5], atol=1e-4)


def test_harmonic_refined():
    assert fd_ground_energy(harmonic(), L=8.0, m=2048) == pytest.approx(0.5, abs=1e-9)


def test_second_order_convergence():
    for model in (harmonic(), quartic(0.1)):
        assert 3.5 <= richardson_ratio(model, 8.0) <= 4.5


def test_box_insensitivity():
    a = fd_ground_energy(quartic(0.1), L=8.0, m=2048)
    b = fd_ground_energy(quartic(0.1), L=10.0, m=2560)
    assert abs(a - b) < 1e-9


@pytest.mark.parametrize("model", [quartic(1.0), quartic(0.1), power2n(3, 0.1),
                                   cubic_quartic(0.05, 0.1)])
def test_agrees_with_fock(model):
    fock = converged_spectrum(model, 1, 1e-10).values[0]
    assert fd_ground_energy(model) == pytest.approx(fock, abs=1e-6)


def test_cubic_below_every_displaced_optimum():
    m = cubic_quartic(0.05, 0.1)
    e = fd_ground_energy(m)
    assert e <= displaced_coherent_minimum(0.05, 0.1)[1]
    assert e <= minimize_displaced(m, PositionGaussian(1.0, 0.0)).energy_opt


def test_small_box_error():
    with pytest.raises(FDError, match="box too small"):
        fd_ground_energy(quartic(0.001), L=0.3, m=512)
    with pytest.raises(FDError):
        fd_ground_energy(quartic(0.1), m=100)
