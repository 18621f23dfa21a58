"""Closed-form energy functionals and series, kept exactly as tabulated.

Nothing here is corrected. Where a tabulated expression disagrees with a
first-principles evaluation (squeezed <x^2>, coherent <x^3>, the displaced
Gaussian cross term, the width expansion for x^(2n)), the disagreement is
measured by :mod:`bargmann_ritz.validation`, not patched here.
"""

from __future__ import annotations

import enum
import math

from .models import Family, ModelSpec
from .moments import double_factorial
from .trials import (AdmissibilityError, BargmannSqueezed, Coherent, DisplacedMonomial,
                     Monomial, PositionGaussian, TrialParams, check_admissible)

SQRT2 = math.sqrt(2.0)


class FormulaId(str, enum.Enum):
    GaussQuartic = "GaussQuartic"
    GaussPower2n = "GaussPower2n"
    GaussDim = "GaussDim"
    CoherentQuartic = "CoherentQuartic"
    SqueezedQuartic = "SqueezedQuartic"
    MonomialQuartic = "MonomialQuartic"
    DisplacedGaussianQuartic = "DisplacedGaussianQuartic"
    DisplacedCoherentCubicQuartic = "DisplacedCoherentCubicQuartic"
    AnisotropyPaper = "AnisotropyPaper"
    NormSquaredPaper = "NormSquaredPaper"
    ExpansionGaussQuartic = "ExpansionGaussQuartic"
    ExpansionAlphaPower = "ExpansionAlphaPower"
    ExpansionE0Power = "ExpansionE0Power"
    ExpansionDisplaced = "ExpansionDisplaced"


ENERGY_IDS = (
    FormulaId.GaussQuartic, FormulaId.GaussPower2n, FormulaId.GaussDim,
    FormulaId.CoherentQuartic, FormulaId.SqueezedQuartic, FormulaId.MonomialQuartic,
    FormulaId.DisplacedGaussianQuartic, FormulaId.DisplacedCoherentCubicQuartic,
)
EXPANSION_IDS = (
    FormulaId.ExpansionGaussQuartic, FormulaId.ExpansionAlphaPower,
    FormulaId.ExpansionE0Power, FormulaId.ExpansionDisplaced,
)

# (accepted trial types, accepted model families)
_SIGNATURES = {
    FormulaId.GaussQuartic: ((PositionGaussian,), (Family.QUARTIC, Family.HARMONIC)),
    FormulaId.GaussPower2n: ((PositionGaussian,), (Family.POWER2N, Family.HARMONIC)),
    FormulaId.GaussDim: ((PositionGaussian,), (Family.QUARTIC, Family.POWER2N, Family.HARMONIC)),
    FormulaId.CoherentQuartic: ((Coherent, DisplacedMonomial), (Family.QUARTIC, Family.HARMONIC)),
    FormulaId.SqueezedQuartic: ((BargmannSqueezed,), (Family.QUARTIC, Family.HARMONIC)),
    FormulaId.MonomialQuartic: ((Monomial,), (Family.QUARTIC, Family.HARMONIC)),
    FormulaId.DisplacedGaussianQuartic: ((PositionGaussian,), (Family.QUARTIC, Family.HARMONIC)),
    FormulaId.DisplacedCoherentCubicQuartic: ((Coherent, DisplacedMonomial),
                                              (Family.CUBIC_QUARTIC,)),
}


class FormulaMismatch(ValueError):
    pass


def gauss_quartic(alpha: float, lam: float) -> float:
    return alpha / 4 + 1 / (4 * alpha) + 3 * lam / (4 * alpha**2)


def gauss_power2n(alpha: float, lam: float, n: int) -> float:
    return alpha / 4 + 1 / (4 * alpha) + lam * double_factorial(2 * n - 1) / (2 * alpha) ** n


def coherent_quartic(gamma: float, lam: float) -> float:
    return gamma**2 + 0.5 + lam * (4 * gamma**4 + 6 * gamma**2 + 0.75)


def squeezed_quartic(alpha: float, lam: float) -> float:
    r = (1 + 4 * alpha**2) / (1 - 4 * alpha**2)
    return 0.5 * r + lam * 0.75 * r**2


def monomial_quartic(n: int, lam: float) -> float:
    return n + 0.5 + 0.75 * lam * (2 * n * n + 2 * n + 1)


def displaced_gaussian_quartic(alpha: float, beta: float, lam: float) -> float:
    return (alpha / 4 + 1 / (4 * alpha) + 0.5 * beta**2
            + lam * (3 / (4 * alpha**2) + 3 * beta**2 / (2 * alpha) + beta**4))


def displaced_coherent_cubic_quartic(gamma: float, lam: float, mu: float) -> float:
    return (gamma**2 + 0.5 + lam * (2 * SQRT2 * gamma**3 + 3 * SQRT2 * gamma)
            + mu * (4 * gamma**4 + 6 * gamma**2 + 0.75))


# moment tables that the energies above are built from

def squeezed_number(alpha: float) -> float:
    return 4 * alpha**2 / (1 - 4 * alpha**2)


def squeezed_x2(alpha: float) -> float:
    return 0.5 * (1 + 4 * alpha**2) / (1 - 4 * alpha**2)


def squeezed_p2(alpha: float) -> float:
    return 0.5 * (1 - 4 * alpha**2) / (1 + 4 * alpha**2)


def squeezed_x4(alpha: float) -> float:
    return 0.75 * ((1 + 4 * alpha**2) / (1 - 4 * alpha**2)) ** 2


def coherent_moments(gamma: float) -> dict[int, float]:
    """<x^k>, k = 1..4, for a real displacement gamma, as tabulated."""
    return {
        1: SQRT2 * gamma,
        2: 2 * gamma**2 + 0.5,
        3: 2 * SQRT2 * gamma**3 + 3 * SQRT2 * gamma,
        4: 4 * gamma**4 + 6 * gamma**2 + 0.75,
    }


def monomial_x4(n: int) -> float:
    return (6 * n * n + 6 * n + 3) / 4


def gaussian_even_moment(alpha: float, n: int) -> float:
    """<x^(2n)> = (2n-1)!! / (2 alpha)^n."""
    return double_factorial(2 * n - 1) / (2 * alpha) ** n


def norm_squared(alpha: float) -> float:
    _require(BargmannSqueezed(alpha))
    return (1 - 4 * alpha**2) ** -0.5


def anisotropy(alpha: float) -> float:
    """<x^2> - <p^2> = 8 alpha^2 / (1 - 16 alpha^4)."""
    _require(BargmannSqueezed(alpha))
    return 8 * alpha**2 / (1 - 16 * alpha**4)


def squeezed_energy_small_alpha(alpha: float, lam: float) -> float:
    """Leading small-alpha form 1/2 + 3 lam/4 + 4 alpha^2 (1 + 3 lam)."""
    return 0.5 + 0.75 * lam + 4 * alpha**2 * (1 + 3 * lam)


def _require(t: TrialParams) -> None:
    ok, why = check_admissible(t)
    if not ok:
        raise AdmissibilityError(f"{t}: inadmissible ({why})")


def _real_gamma(t) -> float:
    g = complex(t.gamma)
    if g.imag != 0.0:
        raise FormulaMismatch("this functional is tabulated for real gamma only")
    return g.real


def energy(formula, t: TrialParams, model: ModelSpec) -> float:
    """Evaluate a tabulated energy functional at trial ``t`` for ``model``."""
    fid = FormulaId(formula)
    if fid not in _SIGNATURES:
        raise FormulaMismatch(f"{fid.value} is not an energy functional")
    trial_types, families = _SIGNATURES[fid]
    if not isinstance(t, trial_types):
        raise FormulaMismatch(f"{fid.value} does not accept {type(t).__name__}")
    if model.family not in families:
        raise FormulaMismatch(f"{fid.value} does not apply to {model.family.value} models")
    if isinstance(t, DisplacedMonomial) and t.n != 0:
        raise FormulaMismatch(f"{fid.value} covers only the n = 0 displaced monomial")
    _require(t)
    lam = model.lam

    if fid is FormulaId.GaussQuartic:
        return gauss_quartic(t.alpha, lam)
    if fid is FormulaId.GaussPower2n:
        return gauss_power2n(t.alpha, lam, model.n)
    if fid is FormulaId.GaussDim:
        one = (gauss_power2n(t.alpha, lam, model.n) if model.family is Family.POWER2N
               else gauss_quartic(t.alpha, lam))
        return model.d * one
    if fid is FormulaId.CoherentQuartic:
        return coherent_quartic(_real_gamma(t), lam)
    if fid is FormulaId.SqueezedQuartic:
        return squeezed_quartic(t.alpha, lam)
    if fid is FormulaId.MonomialQuartic:
        return monomial_quartic(t.n, lam)
    if fid is FormulaId.DisplacedGaussianQuartic:
        return displaced_gaussian_quartic(t.alpha, t.beta, lam)
    return displaced_coherent_cubic_quartic(_real_gamma(t), lam, model.mu)


def expansion(formula, lam: float, mu: float = 0.0, n: int = 2,
              quantity: str = "energy") -> float:
    """Truncated weak-coupling series as tabulated.

    ``quantity`` selects "gamma" for the displacement series of
    ``ExpansionDisplaced``; every other id has a single quantity.
    """
    fid = FormulaId(formula)
    if fid is FormulaId.ExpansionGaussQuartic:
        return 0.5 + 0.75 * lam - 21 / 8 * lam**2
    if fid is FormulaId.ExpansionAlphaPower:
        return 1 - n * (2 * n - 1) * lam
    if fid is FormulaId.ExpansionE0Power:
        return 0.5 + lam * double_factorial(2 * n - 1) / 2**n
    if fid is FormulaId.ExpansionDisplaced:
        if quantity == "gamma":
            return -1.5 * lam
        return 0.5 + 0.75 * mu - 9 / 4 * lam**2
    raise FormulaMismatch(f"{fid.value} is not a series")


# tabulated second-order coefficients, for side-by-side reporting
GAUSS_QUARTIC_LAMBDA2_TABULATED = -21 / 8
GAUSS_QUARTIC_LAMBDA2_PERTURBATIVE = -9 / 8
GAUSS_QUARTIC_WIDTH_LAMBDA1_PERTURBATIVE = 3 / 2
DISPLACED_LAMBDA2 = -9 / 4
DISPLACED_GAMMA_LAMBDA1 = -3 / 2


def power_width_slope(n: int) -> float:
    """Tabulated linear coefficient of alpha_opt(lam) for lam x^(2n): -n(2n-1)."""
    return float(-n * (2 * n - 1))
