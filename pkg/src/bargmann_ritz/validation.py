"""Side-by-side comparison of tabulated formulas with independent oracles.

Each record pairs one closed-form value with a value computed without it
(Segal-Bargmann quadrature, the Fock matrix, or a series fit of exact
minima). Records never assert; ``flagged`` marks rows where a deviation is
expected, either because the closed form disagrees with first principles or
because it is a truncated series compared against a numerical fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import closed_forms as cf
from . import optimize as opt
from .closed_forms import FormulaId
from .models import ModelSpec, cubic_quartic, dimension_total_energy, power2n, quartic
from .quadrature import (HoloTrial, Observable, anisotropy_quadrature, bargmann_expectation,
                         bargmann_inner, quadrature_energy)
from .ritz import hamiltonian_matrix
from .trials import BargmannSqueezed, Coherent, Monomial, PositionGaussian

CLEAN_TOL = 1e-8

# (formula, quantity) pairs whose deviation is expected to be nonzero
KNOWN_DISCREPANCIES = {
    (FormulaId.SqueezedQuartic, "energy"): "squeezed <x^2> assumes <z^2> = 0; quadrature disagrees",
    (FormulaId.SqueezedQuartic, "x2"): "<z^2> and <d^2/dz^2> are nonzero for exp(alpha z^2)",
    (FormulaId.SqueezedQuartic, "p2"): "<z^2> and <d^2/dz^2> are nonzero for exp(alpha z^2)",
    (FormulaId.SqueezedQuartic, "x4"): "built on the tabulated <x^2>",
    (FormulaId.AnisotropyPaper, "anisotropy"): "true anisotropy is 4 alpha/(1 - 4 alpha^2), odd in alpha",
    (FormulaId.DisplacedCoherentCubicQuartic, "energy"): "<x^3> coefficient 3 sqrt2 gamma vs Isserlis 3 sqrt2/2 gamma",
    (FormulaId.DisplacedCoherentCubicQuartic, "x3"): "Isserlis gives 2 sqrt2 g^3 + (3 sqrt2/2) g",
    (FormulaId.DisplacedGaussianQuartic, "energy"): "lam beta^2 term is 3/(2 alpha); Isserlis gives 3/alpha",
}


@dataclass
class ValidationRecord:
    formula: str
    quantity: str
    params: dict
    paper_value: float
    oracle_value: float
    oracle: str
    stable: bool
    flagged: bool = False
    note: str = ""

    @property
    def abs_dev(self) -> float:
        return abs(self.paper_value - self.oracle_value)

    @property
    def rel_dev(self) -> float:
        scale = abs(self.oracle_value)
        return self.abs_dev / scale if scale > 0 else self.abs_dev

    @property
    def clean(self) -> bool:
        return self.stable and self.abs_dev < CLEAN_TOL * max(1.0, abs(self.oracle_value))

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "quantity": self.quantity,
            "params": dict(self.params),
            "paper_value": self.paper_value,
            "oracle_value": self.oracle_value,
            "oracle": self.oracle,
            "abs_dev": self.abs_dev,
            "rel_dev": self.rel_dev,
            "stable": self.stable,
            "flagged": self.flagged,
            "note": self.note,
        }


def _record(fid, quantity, params, tabulated, oracle_value, oracle, stable, flagged=None, note=""):
    key = (FormulaId(fid), quantity)
    if flagged is None:
        flagged = key in KNOWN_DISCREPANCIES and _nonzero_case(key, params)
    if flagged and not note:
        note = KNOWN_DISCREPANCIES.get(key, "")
    return ValidationRecord(FormulaId(fid).value, quantity, params, float(tabulated),
                            float(oracle_value), oracle, bool(stable), bool(flagged), note)


def _nonzero_case(key, params) -> bool:
    """Discrepancies vanish on the symmetric point; those rows stay clean."""
    fid, _ = key
    if fid in (FormulaId.SqueezedQuartic, FormulaId.AnisotropyPaper):
        return params.get("alpha", 0.0) != 0.0
    if fid is FormulaId.DisplacedGaussianQuartic:
        return params.get("beta", 0.0) != 0.0 and params.get("lambda", 0.0) != 0.0
    if fid is FormulaId.DisplacedCoherentCubicQuartic:
        return params.get("gamma", 0.0) != 0.0 and (
            key[1] == "x3" or params.get("lambda", 0.0) != 0.0)
    return True


# --- per-formula evaluators ------------------------------------------------------------------

def _energy_row(fid, trial, model, params, order):
    tabulated = cf.energy(fid, trial, model)
    q = quadrature_energy(trial, model, order)
    value = q.value
    if fid is FormulaId.GaussDim:
        value = dimension_total_energy(model.d, q.value)
    return _record(fid, "energy", params, tabulated, value, "quadrature", q.stable)


def _squeezed_rows(alpha, lam, order):
    params = {"alpha": alpha, "lambda": lam}
    t = BargmannSqueezed(alpha)
    rows = [_energy_row(FormulaId.SqueezedQuartic, t, quartic(lam), params, order)]
    for quantity, obs, tabulated in (
        ("number", Observable.NUMBER, cf.squeezed_number(alpha)),
        ("x2", Observable.X2, cf.squeezed_x2(alpha)),
        ("p2", Observable.P2, cf.squeezed_p2(alpha)),
        ("x4", Observable.X4, cf.squeezed_x4(alpha)),
    ):
        e = bargmann_expectation(obs, t, order)
        rows.append(_record(FormulaId.SqueezedQuartic, quantity, {"alpha": alpha}, tabulated,
                            e.value, "quadrature", e.stable))
    return rows


def _coherent_cubic_rows(gamma, lam, mu, order):
    model = cubic_quartic(lam, mu)
    t = Coherent(gamma)
    rows = [_energy_row(FormulaId.DisplacedCoherentCubicQuartic, t, model,
                        {"gamma": gamma, "lambda": lam, "mu": mu}, order)]
    table = cf.coherent_moments(gamma)
    obs = {1: Observable.X, 2: Observable.X2, 3: Observable.X3, 4: Observable.X4}
    for k in (1, 2, 3, 4):
        e = bargmann_expectation(obs[k], t, order)
        rows.append(_record(FormulaId.DisplacedCoherentCubicQuartic, f"x{k}", {"gamma": gamma},
                            table[k], e.value, "quadrature", e.stable))
    return rows


def _monomial_rows(n, lam, order):
    params = {"n": n, "lambda": lam}
    model = quartic(lam)
    t = Monomial(n)
    rows = [_energy_row(FormulaId.MonomialQuartic, t, model, params, order)]
    e = bargmann_expectation(Observable.X4, t, order)
    rows.append(_record(FormulaId.MonomialQuartic, "x4", {"n": n},
                        cf.monomial_x4(n), e.value, "quadrature", e.stable))
    H = hamiltonian_matrix(model, n + 8)
    rows.append(_record(FormulaId.MonomialQuartic, "energy", params, cf.monomial_quartic(n, lam),
                        H.H[n, n], "fock-diagonal", True))
    return rows


def _norm_row(alpha, order):
    psi = HoloTrial.from_trial(BargmannSqueezed(alpha))
    q = bargmann_inner(psi, psi, order)
    return _record(FormulaId.NormSquaredPaper, "norm", {"alpha": alpha}, cf.norm_squared(alpha),
                   q.value.real, "quadrature", q.stable)


def _anisotropy_row(alpha, order):
    value = anisotropy_quadrature(alpha, order)
    stable = anisotropy_quadrature(alpha, 2 * order)
    return _record(FormulaId.AnisotropyPaper, "anisotropy", {"alpha": alpha},
                   cf.anisotropy(alpha), value, "quadrature",
                   abs(stable - value) <= 1e-10 * max(1.0, abs(value)))


def _series_record(fid, quantity, params, tabulated, fit: opt.SeriesFit, order_k, note):
    return _record(fid, quantity, params, tabulated, fit.coefficients[order_k], "series-fit",
                   fit.reliable, flagged=True, note=note)


def _expansion_rows(lam, mu):
    rows = []
    e_fit = opt.fit_series(lambda l: opt.gauss_quartic_minimum(l)[1])
    a_fit = opt.fit_series(lambda l: opt.gauss_quartic_minimum(l)[0])
    fid = FormulaId.ExpansionGaussQuartic
    rows.append(_series_record(fid, "lambda1_coeff", {}, 0.75, e_fit, 1,
                               "first-order coefficient; agreement limited by fit precision"))
    rows.append(_series_record(fid, "lambda2_coeff", {}, cf.GAUSS_QUARTIC_LAMBDA2_TABULATED, e_fit, 2,
                               "tabulated -21/8 vs fitted second-order coefficient"))
    rows.append(_series_record(fid, "lambda2_coeff_perturbative", {},
                               cf.GAUSS_QUARTIC_LAMBDA2_PERTURBATIVE, e_fit, 2,
                               "perturbative -9/8 vs fitted second-order coefficient"))
    rows.append(_series_record(fid, "width_lambda1_perturbative", {},
                               cf.GAUSS_QUARTIC_WIDTH_LAMBDA1_PERTURBATIVE, a_fit, 1,
                               "perturbative width shift a1 = 3/2 vs fitted slope of the cubic root"))
    alpha_opt, e_min = opt.gauss_quartic_minimum(lam)
    rows.append(_record(fid, "energy", {"lambda": lam}, cf.expansion(fid, lam), e_min,
                        "cardano-minimum", True, flagged=True,
                        note="truncated series vs exact minimum of the Gaussian functional"))

    for n in (2, 3):
        w_fit = opt.fit_series(lambda l: opt.stationary_width(n, l))
        rows.append(_series_record(FormulaId.ExpansionAlphaPower, "width_lambda1", {"power": n},
                                   cf.power_width_slope(n), w_fit, 1,
                                   "tabulated 1 - n(2n-1) lam vs fitted slope n(2n-1)!!/2^(n-1)"))
        p_fit = opt.fit_series(lambda l: opt.gauss_power_minimum(n, l)[1])
        rows.append(_series_record(FormulaId.ExpansionE0Power, "lambda1_coeff", {"power": n},
                                   cf.double_factorial(2 * n - 1) / 2**n, p_fit, 1,
                                   "first-order coefficient; agreement limited by fit precision"))

    d_fit = opt.fit_series(lambda l: opt.displaced_coherent_minimum(l, mu)[1])
    g_fit = opt.fit_series(lambda l: opt.displaced_coherent_minimum(l, mu)[0])
    fid = FormulaId.ExpansionDisplaced
    rows.append(_series_record(fid, "lambda2_coeff", {"mu": mu}, cf.DISPLACED_LAMBDA2, d_fit, 2,
                               "-9/4 vs fitted coefficient of the tabulated functional's minimum"))
    rows.append(_series_record(fid, "gamma_lambda1", {"mu": mu}, cf.DISPLACED_GAMMA_LAMBDA1,
                               g_fit, 1, "-3/2 vs fitted slope of gamma_opt"))
    return rows


def validate_formula(formula, params: dict, order: int = 64) -> ValidationRecord:
    """Primary record for one formula at the given parameters."""
    fid = FormulaId(formula)
    lam = params.get("lambda", 0.1)
    if fid is FormulaId.GaussQuartic:
        t = PositionGaussian(params.get("alpha", 1.0))
        return _energy_row(fid, t, quartic(lam), {"alpha": t.alpha, "lambda": lam}, order)
    if fid is FormulaId.GaussPower2n:
        n = int(params.get("power", 3))
        t = PositionGaussian(params.get("alpha", 1.0))
        return _energy_row(fid, t, power2n(n, lam),
                           {"alpha": t.alpha, "lambda": lam, "power": n}, order)
    if fid is FormulaId.GaussDim:
        d = int(params.get("d", 3))
        t = PositionGaussian(params.get("alpha", 1.0))
        return _energy_row(fid, t, quartic(lam, d=d), {"alpha": t.alpha, "lambda": lam, "d": d},
                           order)
    if fid is FormulaId.CoherentQuartic:
        g = params.get("gamma", 0.3)
        return _energy_row(fid, Coherent(g), quartic(lam), {"gamma": g, "lambda": lam}, order)
    if fid is FormulaId.SqueezedQuartic:
        rows = _squeezed_rows(params.get("alpha", 0.2), lam, order)
        quantity = params.get("quantity", "energy")
        return next(r for r in rows if r.quantity == quantity)
    if fid is FormulaId.MonomialQuartic:
        rows = _monomial_rows(int(params.get("n", 1)), lam, order)
        quantity = params.get("quantity", "energy")
        return next(r for r in rows if r.quantity == quantity)
    if fid is FormulaId.DisplacedGaussianQuartic:
        t = PositionGaussian(params.get("alpha", 1.2), params.get("beta", 0.3))
        return _energy_row(fid, t, quartic(lam),
                           {"alpha": t.alpha, "beta": t.beta, "lambda": lam}, order)
    if fid is FormulaId.DisplacedCoherentCubicQuartic:
        rows = _coherent_cubic_rows(params.get("gamma", -0.1), lam, params.get("mu", 0.2), order)
        quantity = params.get("quantity", "energy")
        return next(r for r in rows if r.quantity == quantity)
    if fid is FormulaId.AnisotropyPaper:
        return _anisotropy_row(params.get("alpha", 0.2), order)
    if fid is FormulaId.NormSquaredPaper:
        return _norm_row(params.get("alpha", 0.25), order)
    rows = [r for r in _expansion_rows(lam, params.get("mu", 0.1)) if r.formula == fid.value]
    quantity = params.get("quantity")
    return next(r for r in rows if quantity is None or r.quantity == quantity)


def validate_all(lam: float = 0.1, mu: float = 0.2, order: int = 64) -> list[ValidationRecord]:
    """Every formula id, at fixed deterministic parameter points."""
    rows: list[ValidationRecord] = []
    alpha_opt = opt.gauss_quartic_minimum(lam)[0]
    for a in (alpha_opt, 0.8):
        rows.append(validate_formula(FormulaId.GaussQuartic, {"alpha": a, "lambda": lam}, order))
    rows.append(validate_formula(FormulaId.GaussPower2n,
                                 {"alpha": 1.1, "lambda": lam, "power": 3}, order))
    rows.append(validate_formula(FormulaId.GaussDim, {"alpha": alpha_opt, "lambda": lam, "d": 3},
                                 order))
    for g in (0.0, 0.3):
        rows.append(validate_formula(FormulaId.CoherentQuartic, {"gamma": g, "lambda": lam}, order))
    rows.extend(_squeezed_rows(0.0, lam, order))
    rows.extend(_squeezed_rows(0.2, lam, order))
    for n in range(4):
        rows.extend(_monomial_rows(n, lam, order))
    for beta in (0.0, 0.3):
        rows.append(validate_formula(FormulaId.DisplacedGaussianQuartic,
                                     {"alpha": 1.2, "beta": beta, "lambda": lam}, order))
    rows.extend(_coherent_cubic_rows(-0.1, lam, mu, order))
    for a in (0.0, 0.2):
        rows.append(_anisotropy_row(a, order))
    for a in (0.1, 0.25, 0.4):
        rows.append(_norm_row(a, order))
    rows.extend(_expansion_rows(lam, 0.1))
    return rows
