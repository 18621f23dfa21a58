import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from bargmann_ritz import closed_forms as cf
from bargmann_ritz.models import cubic_quartic, power2n, quartic
from bargmann_ritz.moments import trial_energy
from bargmann_ritz.quadrature import (HoloTrial, Observable, QuadratureError,
                                      anisotropy_quadrature, bargmann_expectation, bargmann_inner,
                                      quadrature_energy)
from bargmann_ritz.trials import (AdmissibilityError, BargmannSqueezed, Coherent,
                                  DisplacedMonomial, Monomial, PositionGaussian)


def position_moment(precision, k, mean=0.0):
    """<x^k> for the density exp(-precision (x - mean)^2), by scipy quad."""
    w = lambda x: math.exp(-precision * (x - mean) ** 2)
    num, _ = integrate.quad(lambda x: x**k * w(x), -30, 30, epsabs=1e-14)
    den, _ = integrate.quad(w, -30, 30, epsabs=1e-14)
    return num / den


def mono(n):
    c = np.zeros(n + 1)
    c[-1] = 1.0
    return HoloTrial.polynomial(c)


def test_vacuum_norm():
    assert bargmann_inner(mono(0), mono(0), 32).value == pytest.approx(1.0, abs=1e-12)


def test_monomial_orthogonality():
    for m in range(7):
        for n in range(7):
            v = bargmann_inner(mono(m), mono(n), 48).value
            assert v == pytest.approx(math.factorial(n) if m == n else 0.0, abs=1e-10)


def test_squeezed_norm():
    psi = HoloTrial.from_trial(BargmannSqueezed(0.25))
    v = bargmann_inner(psi, psi, 64)
    assert v.stable
    assert v.value.real == pytest.approx((1 - 0.25) ** -0.5, abs=1e-8)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4])
def test_squeezed_norm_table(alpha):
    psi = HoloTrial.from_trial(BargmannSqueezed(alpha))
    assert bargmann_inner(psi, psi).value.real == pytest.approx(cf.norm_squared(alpha), rel=1e-8)


def test_inner_is_hermitian():
    f = HoloTrial((1.0, 0.3 - 0.2j, 0.1j), 0.1 + 0.05j, 0.2)
    g = HoloTrial((0.5, -1.0), -0.15, 0.4 - 0.3j)
    assert bargmann_inner(f, g).value == pytest.approx(np.conj(bargmann_inner(g, f).value),
                                                       abs=1e-12)


def test_number_operator():
    assert bargmann_expectation(Observable.NUMBER, Coherent(0.0)).value == pytest.approx(0.0)
    v = bargmann_expectation(Observable.NUMBER, BargmannSqueezed(0.25)).value
    assert v == pytest.approx(1 / 3, rel=1e-10)


@pytest.mark.parametrize("alpha", [-0.3, -0.1, 0.1, 0.2, 0.35])
def test_squeezed_moments_against_position_space(alpha):
    # exp(alpha z^2) <-> exp(-a x^2 / 2) with a = (1 - 2 alpha) / (1 + 2 alpha)
    a = (1 - 2 * alpha) / (1 + 2 * alpha)
    t = BargmannSqueezed(alpha)
    for obs, k in ((Observable.X2, 2), (Observable.X4, 4)):
        assert bargmann_expectation(obs, t).value == pytest.approx(position_moment(a, k), rel=1e-9)
    assert bargmann_expectation(Observable.P2, t).value == pytest.approx(a / 2, rel=1e-9)


def test_squeezed_x2_differs_from_table():
    v = bargmann_expectation(Observable.X2, BargmannSqueezed(0.1))
    assert v.stable
    assert abs(v.value - cf.squeezed_x2(0.1)) > 1e-3


def test_x4_of_first_excited_state():
    assert bargmann_expectation(Observable.X4, Monomial(1)).value == pytest.approx(15 / 4, abs=1e-8)


@pytest.mark.parametrize("gamma", [-0.7, 0.0, 0.3, 1.1])
def test_coherent_moments(gamma):
    m = math.sqrt(2) * gamma
    for obs, k in ((Observable.X, 1), (Observable.X2, 2), (Observable.X3, 3), (Observable.X4, 4)):
        v = bargmann_expectation(obs, Coherent(gamma)).value
        assert v == pytest.approx(position_moment(1.0, k, m), rel=1e-8, abs=1e-12)


def test_position_gaussian_mapping():
    t = PositionGaussian(1.7, -0.4)
    for obs, k in ((Observable.X, 1), (Observable.X2, 2), (Observable.X4, 4)):
        v = bargmann_expectation(obs, t).value
        assert v == pytest.approx(position_moment(1.7, k, -0.4), rel=1e-9)
    assert bargmann_expectation(Observable.P2, t).value == pytest.approx(1.7 / 2, rel=1e-9)


def test_displaced_monomial_is_displaced_fock_state():
    # D(g)|1>: <x> = sqrt2 g, <x^2> = 2 g^2 + 3/2
    g = 0.4
    t = DisplacedMonomial(1, g)
    assert bargmann_expectation(Observable.X, t).value == pytest.approx(math.sqrt(2) * g)
    assert bargmann_expectation(Observable.X2, t).value == pytest.approx(2 * g * g + 1.5)


@pytest.mark.parametrize("t,model", [
    (PositionGaussian(1.2), quartic(0.1)),
    (PositionGaussian(0.9, 0.2), power2n(3, 0.05)),
    (Coherent(-0.3), cubic_quartic(0.05, 0.1)),
    (Monomial(3), quartic(0.5)),
])
def test_energy_matches_moments(t, model):
    assert quadrature_energy(t, model).value == pytest.approx(trial_energy(t, model), rel=1e-10)


def test_squeezed_energy_not_even():
    # alpha -> -alpha swaps the x and p widths, so <H> of a quartic model changes
    m = quartic(0.3)
    a, b = (quadrature_energy(BargmannSqueezed(s), m).value for s in (0.2, -0.2))
    assert abs(a - b) > 1e-2


def test_vacuum_isotropy_and_anisotropy_oddness():
    assert abs(anisotropy_quadrature(0.0)) < 1e-12
    a = 0.1
    assert anisotropy_quadrature(a) > 0
    assert anisotropy_quadrature(-a) == pytest.approx(-anisotropy_quadrature(a), rel=1e-10)
    assert anisotropy_quadrature(a) == pytest.approx(4 * a / (1 - 4 * a * a), rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.4, 0.4))
def test_odd_moments_vanish_in_even_states(alpha):
    assert abs(bargmann_expectation(Observable.X, BargmannSqueezed(alpha)).value) < 1e-12
    assert abs(bargmann_expectation(Observable.X3, Monomial(2)).value) < 1e-12


def test_inadmissible_and_order_errors():
    with pytest.raises(AdmissibilityError):
        HoloTrial.from_trial(BargmannSqueezed(0.5))
    with pytest.raises(QuadratureError):
        bargmann_inner(mono(0), mono(0), order=4)
    with pytest.raises(QuadratureError):
        bargmann_inner(HoloTrial((1.0,), 0.6), mono(0))
