"""Oscillator Hamiltonians in units hbar = m = omega = 1.

Every model is ``H = p^2/2 + x^2/2 + W(x)`` where the anharmonic part ``W`` is

* ``HARMONIC``:      0
* ``QUARTIC``:       lam * x^4
* ``POWER2N``:       lam * x^(2n)
* ``CUBIC_QUARTIC``: lam * x^3 + mu * x^4

``d`` independent copies of the single-mode problem make up the d-dimensional
isotropic model; energies of product states simply add.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np


class Family(str, enum.Enum):
    HARMONIC = "harmonic"
    QUARTIC = "quartic"
    POWER2N = "power2n"
    CUBIC_QUARTIC = "cubic-quartic"


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    family: Family
    lam: float = 0.0
    mu: float = 0.0
    n: int = 2
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.d < 1:
            raise ModelError(f"dimension must be >= 1, got d={self.d}")
        if self.n < 2:
            raise ModelError(f"power index must be >= 2, got n={self.n}")
        if self.family in (Family.QUARTIC, Family.POWER2N) and self.lam < 0:
            raise ModelError(f"{self.family.value} coupling must be >= 0, got {self.lam}")
        if self.family is Family.CUBIC_QUARTIC and not self.mu > 0:
            raise ModelError(
                f"cubic-quartic model needs mu > 0 (spectrum unbounded below), got mu={self.mu}"
            )

    def anharmonic_terms(self) -> dict[int, float]:
        """Map power -> coefficient of the part of V beyond x^2/2."""
        if self.family is Family.QUARTIC:
            terms = {4: self.lam}
        elif self.family is Family.POWER2N:
            terms = {2 * self.n: self.lam}
        elif self.family is Family.CUBIC_QUARTIC:
            terms = {3: self.lam, 4: self.mu}
        else:
            terms = {}
        return {k: c for k, c in terms.items() if c != 0.0}

    def potential_terms(self) -> dict[int, float]:
        """Map power -> coefficient of the full potential V(x)."""
        terms = {2: 0.5}
        for k, c in self.anharmonic_terms().items():
            terms[k] = terms.get(k, 0.0) + c
        return terms

    @property
    def max_power(self) -> int:
        return max(self.potential_terms())

    @property
    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self.anharmonic_terms())

    def single_mode(self) -> "ModelSpec":
        return ModelSpec(self.family, self.lam, self.mu, self.n, 1)

    def to_dict(self) -> dict:
        fam = self.family
        return {
            "family": fam.value,
            "lambda": self.lam if fam is not Family.HARMONIC else 0.0,
            "mu": self.mu if fam is Family.CUBIC_QUARTIC else 0.0,
            "n": self.n if fam is Family.POWER2N else None,
            "d": self.d,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ModelSpec":
        n = data.get("n")
        return cls(
            Family(data["family"]),
            lam=float(data.get("lambda") or 0.0),
            mu=float(data.get("mu") or 0.0),
            n=int(n) if n is not None else 2,
            d=int(data.get("d", 1)),
        )


def make_model(family, couplings: Mapping | None = None, d: int = 1) -> ModelSpec:
    """Validated constructor. ``couplings`` may hold ``lambda``/``lam``, ``mu`` and ``n``."""
    couplings = dict(couplings or {})
    lam = couplings.pop("lambda", couplings.pop("lam", 0.0))
    mu = couplings.pop("mu", 0.0)
    n = couplings.pop("n", 2)
    if couplings:
        raise ModelError(f"unknown couplings: {sorted(couplings)}")
    return ModelSpec(Family(family), float(lam), float(mu), int(n), int(d))


def harmonic(d: int = 1) -> ModelSpec:
    return ModelSpec(Family.HARMONIC, d=d)


def quartic(lam: float, d: int = 1) -> ModelSpec:
    return ModelSpec(Family.QUARTIC, lam=lam, d=d)


def power2n(n: int, lam: float, d: int = 1) -> ModelSpec:
    return ModelSpec(Family.POWER2N, lam=lam, n=n, d=d)


def cubic_quartic(lam: float, mu: float, d: int = 1) -> ModelSpec:
    return ModelSpec(Family.CUBIC_QUARTIC, lam=lam, mu=mu, d=d)


def potential_value(model: ModelSpec, x):
    """V(x) for a single coordinate. Accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for k, c in model.potential_terms().items():
        out = out + c * x**k
    return out if out.ndim else float(out)


def dimension_total_energy(d: int, e1: float) -> float:
    if d < 1:
        raise ModelError(f"dimension must be >= 1, got d={d}")
    return d * e1


def physical_width(alpha_dimensionless: float, mass: float = 1.0, omega: float = 1.0,
                   hbar: float = 1.0) -> float:
    """Restore units for a Gaussian width: alpha_phys = (m omega / hbar) * alpha."""
    return mass * omega / hbar * alpha_dimensionless
