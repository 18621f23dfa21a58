"""Stationarity solvers, minimizers and weak-coupling series fits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize as _sciopt

from . import closed_forms as cf
from .models import Family, ModelSpec
from .moments import double_factorial, trial_energy
from .trials import Coherent, DisplacedMonomial, PositionGaussian, TrialParams, require_admissible

PARAM_TOL = 1e-10
GRAD_TOL = 1e-9
MAX_ITER = 200
MAX_SWEEPS = 100
FIT_COND_LIMIT = 1e8


class OptimizeError(RuntimeError):
    pass


@dataclass
class MinimizeResult:
    params_opt: TrialParams | float
    energy_opt: float
    gradient_norm: float
    iterations: int
    bracket_used: tuple[float, float]
    stationary_points: int = 1

    def to_dict(self) -> dict:
        from .trials import trial_to_dict
        p = self.params_opt
        return {
            "params_opt": trial_to_dict(p) if not isinstance(p, float) else p,
            "energy_opt": self.energy_opt,
            "gradient_norm": self.gradient_norm,
            "iterations": self.iterations,
            "bracket_used": list(self.bracket_used),
            "stationary_points": self.stationary_points,
        }


@dataclass
class SeriesFit:
    coefficients: dict[int, float]
    lambda_grid: np.ndarray
    residual: float
    condition: float
    reliable: bool
    intercept_fitted: bool = False
    notes: list[str] = field(default_factory=list)

    def coefficient(self, order: int) -> float:
        if not self.reliable:
            raise OptimizeError("series fit marked unreliable: " + "; ".join(self.notes))
        return self.coefficients[order]

    def to_dict(self) -> dict:
        return {
            "coefficients": [[k, v] for k, v in sorted(self.coefficients.items())],
            "lambda_grid": [float(x) for x in self.lambda_grid],
            "residual": self.residual,
            "condition": self.condition,
            "reliable": self.reliable,
        }


# --- the quartic stationarity cubic alpha^3 - alpha - 6 lam = 0 ---------------------------

def cardano_root(lam: float) -> float:
    """Positive root of alpha^3 - alpha - 6 lam = 0.

    For 9 lam^2 < 1/27 the surd form has complex cube-root arguments and the
    trigonometric form is used instead. One Newton step polishes the result.
    """
    if not lam > 0:
        raise OptimizeError(f"cardano_root needs lam > 0 (use alpha = 1 at lam = 0), got {lam}")
    disc = 9 * lam * lam - 1 / 27
    if disc < 0:
        # t^3 + p t + q with p = -1, q = -6 lam; largest of three real roots
        arg = 9 * math.sqrt(3) * lam
        alpha = 2 / math.sqrt(3) * math.cos(math.acos(min(arg, 1.0)) / 3)
    else:
        u = np.cbrt(3 * lam + math.sqrt(disc))
        alpha = float(u + 1 / (3 * u))  # uv = 1/3 avoids cancellation in 3 lam - sqrt(disc)
    f = alpha**3 - alpha - 6 * lam
    return alpha - f / (3 * alpha * alpha - 1)


def cubic_residual(alpha: float, lam: float) -> float:
    return abs(alpha**3 - alpha - 6 * lam)


def gauss_width_gradient(alpha: float, lam: float, n: int = 2) -> float:
    """dE/dalpha of alpha/4 + 1/(4 alpha) + lam (2n-1)!!/(2 alpha)^n."""
    c = n * lam * double_factorial(2 * n - 1) / 2**n
    return 0.25 - 0.25 / alpha**2 - c / alpha ** (n + 1)


def stationary_width(n: int, lam: float) -> float:
    """Global minimizer over alpha > 0 of the Gaussian energy for lam x^(2n)."""
    if n < 2:
        raise OptimizeError("power index must be >= 2")
    if lam == 0:
        return 1.0
    if lam < 0:
        raise OptimizeError("coupling must be >= 0")
    dfac = double_factorial(2 * n - 1)
    lo = 1.0
    hi = 1 + (6 * lam) ** (1 / 3) + (2**n * n * lam * dfac) ** (1 / (n + 1)) + 1
    grad = lambda a: gauss_width_gradient(a, lam, n)
    for _ in range(8):
        if grad(hi) > 0:
            break
        hi *= 2
    else:
        raise OptimizeError(f"no sign change of dE/dalpha on [{lo}, {hi}] for n={n}, lam={lam}")
    # scan for every sign change, then keep the lowest-energy root
    xs = np.linspace(lo, hi, 65)
    gs = np.array([grad(x) for x in xs])
    roots = []
    for a, b, ga, gb in zip(xs[:-1], xs[1:], gs[:-1], gs[1:]):
        if ga == 0:
            roots.append(a)
        elif ga * gb < 0:
            roots.append(_sciopt.brentq(grad, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                                        maxiter=MAX_ITER))
    if not roots:
        raise OptimizeError(f"bracket [{lo}, {hi}] holds no stationary point")
    return min(roots, key=lambda a: cf.gauss_power2n(a, lam, n))


# --- scalar minimization ---------------------------------------------------------------------

def _gradient(f, x, scale=1.0):
    h = 1e-5 * max(1.0, abs(scale))
    return (f(x + h) - f(x - h)) / (2 * h)


def _polish(f, x, lo, hi):
    """Refine a Brent estimate by bracketing a zero of the central-difference slope."""
    g = lambda u: _gradient(f, u)
    gx = g(x)
    if gx == 0:
        return x
    step = 1e-7
    while step < (hi - lo):
        a, b = max(lo, x - step), min(hi, x + step)
        ga, gb = g(a), g(b)
        if ga <= 0 <= gb:
            if ga == 0:
                return a
            if gb == 0:
                return b
            return _sciopt.brentq(g, a, b, xtol=1e-14, maxiter=MAX_ITER)
        step *= 10
    return x


def minimize_scalar(f: Callable[[float], float], bracket: Sequence[float],
                    tol: float = PARAM_TOL, samples: int = 33) -> MinimizeResult:
    """Minimize a smooth function of one variable on an open interval.

    A sampling pass locates the lowest interior sample (error if it sits at
    an end point); bounded Brent (golden section with parabolic steps) then
    narrows inside the neighbouring cells, and a root search on the
    central-difference slope polishes the result below sqrt(eps).
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi > lo:
        raise OptimizeError(f"empty bracket {bracket}")
    xs = np.linspace(lo, hi, samples)
    fs = np.array([f(x) for x in xs])
    i = int(np.argmin(fs))
    if i == 0 or i == samples - 1:
        raise OptimizeError(f"monotone on bracket [{lo}, {hi}]: lowest sample at an end point")
    a, b = xs[i - 1], xs[i + 1]
    res = _sciopt.minimize_scalar(f, bounds=(a, b), method="bounded",
                                  options={"xatol": tol, "maxiter": MAX_ITER})
    x = _polish(f, float(res.x), a, b)
    fx = float(f(x))
    interior = (fs[1:-1] <= fs[:-2]) & (fs[1:-1] <= fs[2:])
    return MinimizeResult(x, fx, abs(_gradient(f, x)), int(res.nfev) + samples, (lo, hi),
                          int(interior.sum()))


# --- displaced two-parameter minimization ---------------------------------------------------

def _displaced_energy(model: ModelSpec, source: str):
    if source == "moments":
        return lambda t: trial_energy(t, model)
    if source != "closed-form":
        raise OptimizeError(f"unknown energy source {source!r}")
    if model.family is Family.CUBIC_QUARTIC:
        return lambda t: cf.energy(cf.FormulaId.DisplacedCoherentCubicQuartic, t, model)
    if model.family in (Family.QUARTIC, Family.HARMONIC):
        return lambda t: (cf.energy(cf.FormulaId.DisplacedGaussianQuartic, t, model)
                          if isinstance(t, PositionGaussian)
                          else cf.energy(cf.FormulaId.CoherentQuartic, t, model))
    raise OptimizeError(f"no closed form for displaced trials in {model.family.value}")


def minimize_displaced(model: ModelSpec, init: TrialParams, tol: float = PARAM_TOL,
                       source: str = "moments", max_sweeps: int = MAX_SWEEPS,
                       width_bracket=(0.02, 40.0), shift_bracket=(-4.0, 4.0)) -> MinimizeResult:
    """Minimize over (width, displacement) or real displacement alone.

    ``init`` is a ``PositionGaussian`` (alternating sweeps over alpha and
    beta) or an n = 0 ``DisplacedMonomial``/``Coherent`` (real gamma).
    ``source`` picks the energy: "moments" (first-principles) or "closed-form".
    """
    require_admissible(init)
    if model.family not in (Family.QUARTIC, Family.CUBIC_QUARTIC, Family.HARMONIC):
        raise OptimizeError("displaced minimization is for quartic and cubic-quartic models")
    E = _displaced_energy(model, source)

    if isinstance(init, (Coherent, DisplacedMonomial)):
        if isinstance(init, DisplacedMonomial) and init.n != 0:
            raise OptimizeError("only the n = 0 displaced monomial is supported")
        make = (lambda g: DisplacedMonomial(0, g)) if isinstance(init, DisplacedMonomial) \
            else (lambda g: Coherent(g))
        r = minimize_scalar(lambda g: E(make(g)), shift_bracket, tol)
        return MinimizeResult(make(r.params_opt), r.energy_opt, r.gradient_norm, r.iterations,
                              r.bracket_used, r.stationary_points)

    if not isinstance(init, PositionGaussian):
        raise OptimizeError(f"unsupported family {type(init).__name__}")
    alpha, beta = init.alpha, init.beta
    iterations = 0
    for sweep in range(1, max_sweeps + 1):
        ra = minimize_scalar(lambda a: E(PositionGaussian(a, beta)), width_bracket, tol)
        rb = minimize_scalar(lambda b: E(PositionGaussian(ra.params_opt, b)), shift_bracket, tol)
        iterations += ra.iterations + rb.iterations
        step = max(abs(ra.params_opt - alpha), abs(rb.params_opt - beta))
        alpha, beta = ra.params_opt, rb.params_opt
        if step < tol:
            break
    else:
        raise OptimizeError(f"alternating minimization did not settle in {max_sweeps} sweeps")
    t = PositionGaussian(alpha, beta)
    ga = _gradient(lambda a: E(PositionGaussian(a, beta)), alpha)
    gb = _gradient(lambda b: E(PositionGaussian(alpha, b)), beta)
    return MinimizeResult(t, E(t), math.hypot(ga, gb), iterations,
                          (width_bracket[0], width_bracket[1]))


# --- minima of the tabulated functionals, as functions of the coupling ----------------------

def gauss_quartic_minimum(lam: float) -> tuple[float, float]:
    """(alpha_opt, E_min) for the Gaussian quartic functional."""
    alpha = 1.0 if lam == 0 else cardano_root(lam)
    return alpha, cf.gauss_quartic(alpha, lam)


def gauss_power_minimum(n: int, lam: float) -> tuple[float, float]:
    alpha = stationary_width(n, lam)
    return alpha, cf.gauss_power2n(alpha, lam, n)


def displaced_coherent_minimum(lam: float, mu: float, tol: float = 1e-12) -> tuple[float, float]:
    """(gamma_opt, E_min) of the tabulated cubic-quartic coherent functional over real gamma."""
    f = lambda g: cf.displaced_coherent_cubic_quartic(g, lam, mu)
    r = minimize_scalar(f, (-2.0, 2.0), tol)
    return float(r.params_opt), r.energy_opt


# --- analytic weak-coupling expansions (implicit-function theorem) --------------------------

def stationary_expansion(e_pp: float, e_pl: float, e_ll: float = 0.0) -> tuple[float, float]:
    """For E(p, lam) stationary in p at (p0, 0): (dp/dlam, second-order energy coefficient).

    p = p0 + p1 lam + ..., E_min = E0 + E_lam lam + c2 lam^2 + ... with
    p1 = -E_pl/E_pp and c2 = E_ll/2 - E_pl^2/(2 E_pp).
    """
    p1 = -e_pl / e_pp
    return p1, 0.5 * e_ll - e_pl**2 / (2 * e_pp)


def gauss_quartic_expansion() -> tuple[float, float]:
    # E = a/4 + 1/(4a) + 3 lam/(4 a^2) at a = 1: E_aa = 1/2, E_al = -3/2
    return stationary_expansion(0.5, -1.5)


def gauss_power_expansion(n: int) -> tuple[float, float]:
    # E_aa = 1/2, E_al = -n (2n-1)!! / 2^n at a = 1
    return stationary_expansion(0.5, -n * double_factorial(2 * n - 1) / 2**n)


def displaced_coherent_expansion(mu: float) -> tuple[float, float]:
    # tabulated E(g) at g = 0: E_gg = 2 + 12 mu, E_gl = 3 sqrt(2)
    return stationary_expansion(2 + 12 * mu, 3 * math.sqrt(2))


# --- series fitting -------------------------------------------------------------------------

def default_fit_grid(lo: float = 1e-4, hi: float = 1e-2, count: int = 40) -> np.ndarray:
    return np.geomspace(lo, hi, count)


def fit_series(f: Callable[[float], float], grid=None, max_order: int = 3,
               f0: float | None = None) -> SeriesFit:
    """Least-squares fit of f(lam) - f(0+) to sum_{k=1..max_order} c_k lam^k.

    ``f0`` defaults to f(0.0) when f accepts zero; otherwise the constant is
    fitted as an extra coefficient (reported at order 0).
    """
    if not 1 <= max_order <= 3:
        raise OptimizeError("max_order must be between 1 and 3")
    grid = default_fit_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise OptimizeError("fit grid must be strictly positive and increasing")
    if grid.size <= max_order + 1:
        raise OptimizeError("fit grid too small for the requested order")
    fitted_intercept = False
    if f0 is None:
        try:
            f0 = float(f(0.0))
        except (OptimizeError, ValueError, ZeroDivisionError):
            fitted_intercept = True
    y = np.array([f(x) for x in grid], dtype=float)
    scale = grid[-1]
    t = grid / scale
    first = 0 if fitted_intercept else 1
    orders = list(range(first, max_order + 1))
    A = np.stack([t**k for k in orders], axis=1)
    rhs = y if fitted_intercept else y - f0
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    cond = float(np.linalg.cond(A))
    resid = rhs - A @ sol
    rms = float(np.sqrt(np.mean(resid**2)))
    coeffs = {k: float(c / scale**k) for k, c in zip(orders, sol)}
    if not fitted_intercept:
        coeffs[0] = float(f0)
    notes = []
    reliable = True
    if cond > FIT_COND_LIMIT:
        reliable = False
        notes.append(f"condition number {cond:.3g} above {FIT_COND_LIMIT:.0e}")
    if not np.isfinite(rms):
        reliable = False
        notes.append("non-finite residual")
    return SeriesFit(coeffs, grid, rms, cond, reliable, fitted_intercept, notes)
