"""Segal-Bargmann inner products by tensor Gauss-Hermite quadrature over C.

With z = x + iy the measure (1/pi) e^{-|z|^2} dx dy is the product of two
Hermite weights, so a rule with ``order`` nodes per axis integrates
polynomial integrands exactly up to total degree 2*order - 1 in each variable.
Every trial handled here has the form P(z) exp(s z^2 + b z) with P a
polynomial; ladder operators act on that form in closed form
(d/dz [P e^q] = (P' + P q') e^q), so no numerical differentiation enters.
The leftover exponential is folded into the integrand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from .models import ModelSpec
from .trials import (BargmannSqueezed, Coherent, DisplacedMonomial, Monomial,
                     PositionGaussian, TrialParams, require_admissible)

MIN_ORDER = 8
MAX_ORDER = 512
STABLE_RTOL = 1e-10


class QuadratureError(ValueError):
    pass


class Observable(str, enum.Enum):
    NUMBER = "number"
    X = "x"
    X2 = "x2"
    X3 = "x3"
    X4 = "x4"
    P2 = "p2"


@dataclass(frozen=True)
class QuadratureGrid:
    order: int
    z: np.ndarray  # complex nodes, order**2 of them
    log_weight: np.ndarray  # log of w_i w_j / pi

    @classmethod
    def build(cls, order: int) -> "QuadratureGrid":
        return _grid(int(order))

    @property
    def weights(self) -> np.ndarray:
        return np.exp(self.log_weight)


@lru_cache(maxsize=16)
def _grid(order: int) -> QuadratureGrid:
    if order < MIN_ORDER:
        raise QuadratureError(f"quadrature order must be >= {MIN_ORDER}, got {order}")
    if order > MAX_ORDER:
        raise QuadratureError(f"quadrature order capped at {MAX_ORDER}, got {order}")
    t, w = np.polynomial.hermite.hermgauss(order)
    with np.errstate(divide="ignore"):
        lw = np.log(w)
    x, y = np.meshgrid(t, t, indexing="ij")
    lwx, lwy = np.meshgrid(lw, lw, indexing="ij")
    z = (x + 1j * y).ravel()
    z.setflags(write=False)
    log_weight = (lwx + lwy).ravel() - math.log(math.pi)
    log_weight.setflags(write=False)
    return QuadratureGrid(order, z, log_weight)


@dataclass(frozen=True)
class HoloTrial:
    """psi(z) = poly(z) * exp(s z^2 + b z); ``poly`` holds ascending coefficients."""

    poly: tuple
    s: complex = 0.0
    b: complex = 0.0
    params: TrialParams | None = None

    @property
    def coeffs(self) -> np.ndarray:
        return np.asarray(self.poly, dtype=complex)

    def with_poly(self, coeffs) -> "HoloTrial":
        return HoloTrial(tuple(np.asarray(coeffs, dtype=complex)), self.s, self.b, self.params)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, self.coeffs) * np.exp(self.s * z * z + self.b * z)

    def derivative(self) -> "HoloTrial":
        return self.with_poly(_d(self.coeffs, self.s, self.b))

    @classmethod
    def from_trial(cls, t: TrialParams) -> "HoloTrial":
        require_admissible(t)
        if isinstance(t, Coherent):
            return cls((1.0 + 0j,), 0.0, complex(t.gamma), t)
        if isinstance(t, BargmannSqueezed):
            return cls((1.0 + 0j,), complex(t.alpha), 0.0, t)
        if isinstance(t, Monomial):
            c = np.zeros(t.n + 1, dtype=complex)
            c[-1] = 1.0 / math.sqrt(math.factorial(t.n))
            return cls(tuple(c), 0.0, 0.0, t)
        if isinstance(t, DisplacedMonomial):
            g = complex(t.gamma)
            c = P.polypow(np.array([-g.conjugate(), 1.0]), t.n) if t.n else np.ones(1)
            return cls(tuple(np.asarray(c, dtype=complex)), 0.0, g, t)
        if isinstance(t, PositionGaussian):
            # density exp(-alpha (x - beta)^2)  <->  exp(s z^2 + b z)
            a = t.alpha
            s = (1.0 - a) / (2.0 * (1.0 + a))
            b = math.sqrt(2.0) * a * t.beta / (1.0 + a)
            return cls((1.0 + 0j,), complex(s), complex(b), t)
        raise QuadratureError(f"no holomorphic representation for {t!r}")

    @classmethod
    def polynomial(cls, coeffs) -> "HoloTrial":
        return cls(tuple(np.asarray(coeffs, dtype=complex)))


# operator actions on the polynomial prefactor, exponent held fixed

def _d(c, s, b):
    return P.polyadd(P.polyder(c), P.polymul(c, np.array([b, 2 * s])))


def _z(c):
    return P.polymulx(c)


def _x(c, s, b):
    return P.polyadd(_z(c), _d(c, s, b)) / math.sqrt(2.0)


def _p(c, s, b):
    return P.polysub(_z(c), _d(c, s, b)) / (1j * math.sqrt(2.0))


def _x_power(c, k, s, b):
    for _ in range(k):
        c = _x(c, s, b)
    return c


def apply_observable(obs, psi: HoloTrial) -> HoloTrial:
    """Return the trial obtained by acting with ``obs`` on ``psi``.

    ``obs`` is an ``Observable`` or a ``ModelSpec`` (its Hamiltonian
    z d/dz + 1/2 + W((z + d/dz)/sqrt 2)).
    """
    c, s, b = psi.coeffs, psi.s, psi.b
    if isinstance(obs, ModelSpec):
        out = P.polyadd(_z(_d(c, s, b)), 0.5 * c)
        for k, coeff in obs.anharmonic_terms().items():
            out = P.polyadd(out, coeff * _x_power(c, k, s, b))
        return psi.with_poly(out)
    obs = Observable(obs)
    if obs is Observable.NUMBER:
        out = _z(_d(c, s, b))
    elif obs is Observable.P2:
        out = _p(_p(c, s, b), s, b)
    else:
        k = {Observable.X: 1, Observable.X2: 2, Observable.X3: 3, Observable.X4: 4}[obs]
        out = _x_power(c, k, s, b)
    return psi.with_poly(out)


def _inner_on_grid(f: HoloTrial, g: HoloTrial, grid: QuadratureGrid) -> complex:
    z = grid.z
    expo = np.conj(f.s * z * z + f.b * z) + g.s * z * z + g.b * z + grid.log_weight
    vals = np.conj(P.polyval(z, f.coeffs)) * P.polyval(z, g.coeffs) * np.exp(expo)
    # fixed summation order keeps results bit-reproducible
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


@dataclass(frozen=True)
class QuadratureValue:
    value: complex
    coarse: complex
    order: int
    stable: bool

    @property
    def delta(self) -> float:
        return abs(self.value - self.coarse)


def _doubled(fn, order: int) -> QuadratureValue:
    if order < MIN_ORDER:
        raise QuadratureError(f"quadrature order must be >= {MIN_ORDER}, got {order}")
    coarse = fn(_grid(order))
    fine = fn(_grid(min(2 * order, MAX_ORDER)))
    scale = max(1.0, abs(fine))
    return QuadratureValue(fine, coarse, min(2 * order, MAX_ORDER),
                           abs(fine - coarse) <= STABLE_RTOL * scale)


def bargmann_inner(f: HoloTrial, g: HoloTrial, order: int = 64) -> QuadratureValue:
    """(1/pi) * integral conj(f) g e^{-|z|^2} d^2z, evaluated at order and 2*order."""
    for t in (f, g):
        if t.params is not None:
            require_admissible(t.params)
        s = complex(t.s)
        if not abs(s) < 0.5:
            raise QuadratureError(f"exp({s} z^2) is not in the Segal-Bargmann space")
    return _doubled(lambda grid: _inner_on_grid(f, g, grid), order)


def bargmann_inner_value(f: HoloTrial, g: HoloTrial, order: int) -> complex:
    """Single-order evaluation, no doubling."""
    return _inner_on_grid(f, g, _grid(order))


@dataclass(frozen=True)
class Expectation:
    value: float
    imag_residual: float
    norm: float
    order: int
    stable: bool


def bargmann_expectation(obs, t, order: int = 64) -> Expectation:
    """<t|obs|t> / <t|t> by quadrature, with an order-doubling stability check."""
    psi = t if isinstance(t, HoloTrial) else HoloTrial.from_trial(t)
    o_psi = apply_observable(obs, psi)

    def ratio(grid):
        return _inner_on_grid(psi, o_psi, grid) / _inner_on_grid(psi, psi, grid).real

    q = _doubled(ratio, order)
    norm = _inner_on_grid(psi, psi, _grid(q.order)).real
    return Expectation(q.value.real, q.value.imag, norm, q.order, q.stable)


def quadrature_energy(t, model: ModelSpec, order: int = 64) -> Expectation:
    """Single-mode <H> of ``model`` in trial ``t``."""
    return bargmann_expectation(model.single_mode(), t, order)


def anisotropy_quadrature(alpha: float, order: int = 64) -> float:
    """<x^2> - <p^2> for exp(alpha z^2)."""
    t = BargmannSqueezed(alpha)
    require_admissible(t)
    return (bargmann_expectation(Observable.X2, t, order).value
            - bargmann_expectation(Observable.P2, t, order).value)
