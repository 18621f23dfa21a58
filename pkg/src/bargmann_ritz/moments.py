"""Position moments from first principles.

Gaussian states use the Isserlis recursion
``<x^k> = m <x^(k-1)> + (k-1) v <x^(k-2)>``; Fock states use the ladder-operator
result for <n|x^4|n>. Nothing here is copied from a tabulated energy functional,
so this module can referee those functionals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .models import ModelSpec
from .trials import (BargmannSqueezed, Coherent, DisplacedMonomial, Monomial,
                     PositionGaussian, TrialParams, require_admissible)


class UnsupportedMoment(NotImplementedError):
    pass


@dataclass(frozen=True)
class GaussianState1D:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError(f"variance must be positive, got {self.variance}")


def double_factorial(m: int) -> int:
    if m < -1 or m % 2 == 0:
        raise ValueError(f"double factorial defined here for odd m >= -1, got {m}")
    out = 1
    for j in range(m, 0, -2):
        out *= j
    return out


def gaussian_moment(g: GaussianState1D, k: int) -> float:
    if k < 0:
        raise ValueError("moment order must be >= 0")
    prev, cur = 0.0, 1.0  # <x^-1> placeholder, <x^0>
    for j in range(1, k + 1):
        prev, cur = cur, g.mean * cur + (j - 1) * g.variance * prev
    return cur


def monomial_x4_moment(n: int) -> Fraction:
    if n < 0:
        raise ValueError("Fock index must be >= 0")
    return Fraction(6 * n * n + 6 * n + 3, 4)


def gaussian_state(t: TrialParams) -> GaussianState1D:
    """Position distribution of a Gaussian trial state."""
    if isinstance(t, PositionGaussian):
        return GaussianState1D(t.beta, 1.0 / (2.0 * t.alpha))
    if isinstance(t, Coherent) or (isinstance(t, DisplacedMonomial) and t.n == 0):
        return GaussianState1D(math.sqrt(2.0) * complex(t.gamma).real, 0.5)
    raise UnsupportedMoment(f"{type(t).__name__} is not handled as a Gaussian state here")


def trial_moment(t: TrialParams, k: int) -> float:
    """k-th position moment <x^k> of the normalized state described by ``t``."""
    require_admissible(t)
    if isinstance(t, Monomial):
        if k % 2 == 1:
            return 0.0
        if k == 0:
            return 1.0
        if k == 2:
            return t.n + 0.5
        if k == 4:
            return float(monomial_x4_moment(t.n))
        raise UnsupportedMoment(f"no closed form for <x^{k}> in a Fock state; use quadrature")
    if isinstance(t, BargmannSqueezed):
        from .quadrature import Observable, bargmann_expectation, HoloTrial
        obs = {1: Observable.X, 2: Observable.X2, 3: Observable.X3, 4: Observable.X4}
        if k not in obs:
            raise UnsupportedMoment(f"squeezed <x^{k}> not wired to quadrature")
        return bargmann_expectation(obs[k], HoloTrial.from_trial(t)).value
    if isinstance(t, DisplacedMonomial) and t.n > 0:
        raise UnsupportedMoment("displaced Fock states with n > 0: use quadrature")
    return gaussian_moment(gaussian_state(t), k)


def trial_kinetic(t: TrialParams) -> float:
    """<p^2>/2 for the Gaussian and Fock families."""
    require_admissible(t)
    if isinstance(t, PositionGaussian):
        return t.alpha / 4.0
    if isinstance(t, Coherent) or (isinstance(t, DisplacedMonomial) and t.n == 0):
        # <p> = sqrt(2) Im(gamma), Var(p) = 1/2
        return 0.25 + complex(t.gamma).imag ** 2
    if isinstance(t, Monomial):
        return 0.5 * (t.n + 0.5)
    raise UnsupportedMoment(f"no closed-form kinetic energy for {type(t).__name__}")


def trial_energy(t: TrialParams, model: ModelSpec) -> float:
    """<H> for one mode, assembled from moments; multiply by d for product states."""
    e = trial_kinetic(t)
    for power, coeff in model.potential_terms().items():
        e += coeff * trial_moment(t, power)
    return e
