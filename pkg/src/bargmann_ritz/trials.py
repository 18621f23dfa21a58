"""Trial-wavefunction families and their admissibility.

Position-space family: ``PositionGaussian`` with density exp(-alpha (x - beta)^2).
Holomorphic families (functions of z in the Segal-Bargmann space):

* ``Coherent(gamma)``            exp(gamma z - |gamma|^2 / 2)
* ``BargmannSqueezed(alpha)``    exp(alpha z^2)
* ``Monomial(n)``                z^n / sqrt(n!)
* ``DisplacedMonomial(n, gamma)`` the Fock state |n> displaced by gamma,
  (z - conj(gamma))^n exp(gamma z) up to normalization; n = 0 is the coherent state.

e^{a z^2 + b z} is square-integrable against e^{-|z|^2} iff |a| < 1/2. The
condition sup_theta Re(a e^{2 i theta}) < 1/2 is the same predicate, since the
supremum equals |a|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class PositionGaussian:
    alpha: float
    beta: float = 0.0

    family = "position-gaussian"


@dataclass(frozen=True)
class Coherent:
    gamma: complex = 0.0

    family = "coherent"


@dataclass(frozen=True)
class BargmannSqueezed:
    alpha: float

    family = "squeezed"


@dataclass(frozen=True)
class Monomial:
    n: int

    family = "monomial"


@dataclass(frozen=True)
class DisplacedMonomial:
    n: int
    gamma: complex = 0.0

    family = "displaced-monomial"


TrialParams = Union[PositionGaussian, Coherent, BargmannSqueezed, Monomial, DisplacedMonomial]

_FAMILIES = {cls.family: cls for cls in
             (PositionGaussian, Coherent, BargmannSqueezed, Monomial, DisplacedMonomial)}


@dataclass(frozen=True)
class QuadraticFormM:
    """Real quadratic form of log|e^{alpha z^2 + beta z}|^2 e^{-|z|^2} in (x, y).

    The exponent is ``-r^T M r + v^T r`` with r = (x, y).
    """

    a: float
    b: float
    c: float = 0.0
    dd: float = 0.0

    @classmethod
    def from_coefficients(cls, alpha: complex, beta: complex = 0.0) -> "QuadraticFormM":
        alpha, beta = complex(alpha), complex(beta)
        return cls(alpha.real, alpha.imag, beta.real, beta.imag)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[1 - 2 * self.a, 2 * self.b], [2 * self.b, 1 + 2 * self.a]])

    @property
    def v(self) -> np.ndarray:
        return np.array([2 * self.c, -2 * self.dd])

    @property
    def trace(self) -> float:
        return 2.0

    @property
    def det(self) -> float:
        return 1 - 4 * (self.a**2 + self.b**2)

    @property
    def positive_definite(self) -> bool:
        return self.det > 0


def hessian_determinant(alpha: complex) -> float:
    return QuadraticFormM.from_coefficients(alpha).det


def check_admissible(t: TrialParams) -> tuple[bool, str]:
    """Return ``(ok, diagnostic)``; the diagnostic is empty when ok."""
    if isinstance(t, PositionGaussian):
        if not t.alpha > 0:
            return False, "width must be positive"
        if not math.isfinite(t.beta):
            return False, "displacement must be finite"
        return True, ""
    if isinstance(t, BargmannSqueezed):
        det = hessian_determinant(t.alpha)
        if det > 0:
            return True, ""
        if det == 0:
            return False, "det(M)=0"
        return False, f"det(M)={det:.6g} < 0"
    if isinstance(t, (Monomial, DisplacedMonomial)):
        if not (isinstance(t.n, (int, np.integer)) and t.n >= 0):
            return False, "degree must be a non-negative integer"
        return True, ""
    if isinstance(t, Coherent):
        if not np.isfinite(complex(t.gamma)):
            return False, "displacement must be finite"
        return True, ""
    return False, f"unknown trial family {type(t).__name__}"


def require_admissible(t: TrialParams) -> None:
    ok, why = check_admissible(t)
    if not ok:
        raise AdmissibilityError(f"{t}: not normalizable ({why})")


def bargmann_norm_squared(alpha: float, beta: complex = 0.0) -> float:
    """Closed-form ||e^{alpha z^2 + beta z}||^2 in the Segal-Bargmann space."""
    q = QuadraticFormM.from_coefficients(alpha, beta)
    if not q.positive_definite:
        raise AdmissibilityError(f"alpha={alpha}: not normalizable (det(M)={q.det:.6g})")
    m, v = q.matrix, q.v
    # (1/pi) * pi / sqrt(det M) * exp(v^T M^-1 v / 4)
    return float(q.det**-0.5 * math.exp(0.25 * v @ np.linalg.solve(m, v)))


def squeeze_parameter(alpha: float) -> float:
    """r with alpha = tanh(r) / 2."""
    if not abs(alpha) < 0.5:
        raise AdmissibilityError(f"|alpha| must be < 1/2, got {alpha}")
    return math.atanh(2 * alpha)


def _complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _complex_from_json(v) -> complex:
    if isinstance(v, dict):
        return complex(v.get("re", 0.0), v.get("im", 0.0))
    return complex(v)


def trial_to_dict(t: TrialParams) -> dict:
    if isinstance(t, PositionGaussian):
        params = {"alpha": t.alpha, "beta": t.beta}
    elif isinstance(t, Coherent):
        params = {"gamma": _complex_to_json(t.gamma)}
    elif isinstance(t, BargmannSqueezed):
        params = {"alpha": t.alpha}
    elif isinstance(t, Monomial):
        params = {"n": t.n}
    elif isinstance(t, DisplacedMonomial):
        params = {"n": t.n, "gamma": _complex_to_json(t.gamma)}
    else:
        raise TypeError(f"not a trial: {t!r}")
    return {"family": t.family, "params": params}


def trial_from_dict(data: dict) -> TrialParams:
    cls = _FAMILIES[data["family"]]
    p = dict(data["params"])
    if "gamma" in p:
        p["gamma"] = _complex_from_json(p["gamma"])
    if "n" in p:
        p["n"] = int(p["n"])
    return cls(**p)
