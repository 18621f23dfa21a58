"""Command-line front end.

    bargmann-ritz minimize --model quartic --lambda 0.1 --family gaussian
    bargmann-ritz spectrum --model harmonic --levels 4
    bargmann-ritz validate --all --lambda 0.1
    bargmann-ritz sweep --model quartic --grid 0.01:1:20 --format csv
    bargmann-ritz report --out report.json

Exit status: 0 on success, 1 on a usage error, 2 when a computation fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from . import optimize as opt
from .fd import FDError, fd_ground_energy
from .models import Family, ModelError, ModelSpec, dimension_total_energy
from .moments import UnsupportedMoment, trial_energy
from .quadrature import QuadratureError, quadrature_energy
from .report import ReportError, emit_report
from .ritz import RitzError, converged_spectrum
from .trials import AdmissibilityError, BargmannSqueezed, Coherent, PositionGaussian
from .validation import validate_all, validate_formula

COMMANDS = ("minimize", "spectrum", "validate", "sweep", "report")
TRIAL_FAMILIES = ("gaussian", "coherent", "squeezed", "displaced-gaussian")
MODEL_ALIASES = {"cubic_quartic": "cubic-quartic", "cubicquartic": "cubic-quartic",
                 "power": "power2n"}

COMPUTE_ERRORS = (opt.OptimizeError, RitzError, FDError, AdmissibilityError, ModelError,
                  QuadratureError, cf.FormulaMismatch, UnsupportedMoment, ReportError)

DEFAULTS = {
    "model": "quartic", "lambda": 0.1, "mu": 0.2, "power": 2, "dim": 1,
    "family": "gaussian", "formula": None, "all": False, "tol": 1e-10, "order": 64,
    "format": "json", "out": None, "levels": 1, "grid": None, "cap": 4096,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str = "quartic"
    lam: float = 0.1
    mu: float = 0.2
    power: int = 2
    dim: int = 1
    family: str = "gaussian"
    formulas: list = field(default_factory=list)
    all: bool = False
    grid: list = field(default_factory=list)
    tol: float = 1e-10
    order: int = 64
    fmt: str = "json"
    out: str | None = None
    levels: int = 1
    cap: int = 4096

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")
        if self.levels < 1:
            raise UsageError(f"--levels must be >= 1, got {self.levels}")
        if self.fmt not in ("json", "csv"):
            raise UsageError(f"--format must be json or csv, got {self.fmt!r}")
        if self.command == "sweep" and not self.grid:
            raise UsageError("sweep needs a nonempty --grid")

    def model_spec(self, lam: float | None = None) -> ModelSpec:
        lam = self.lam if lam is None else lam
        fam = Family(self.model)
        if fam is Family.HARMONIC:
            return ModelSpec(fam, d=self.dim)
        if fam is Family.POWER2N:
            return ModelSpec(fam, lam=lam, n=self.power, d=self.dim)
        if fam is Family.CUBIC_QUARTIC:
            return ModelSpec(fam, lam=lam, mu=self.mu, d=self.dim)
        return ModelSpec(fam, lam=lam, d=self.dim)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parse_grid(text: str) -> list[float]:
    """Comma list "0.1,0.2" or log-spaced "lo:hi:count"."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid spec {text!r} must be lo:hi:count")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1 or not 0 < lo <= hi:
            raise UsageError(f"bad grid {text!r}")
        return [float(x) for x in np.geomspace(lo, hi, count)]
    vals = [float(v) for v in text.split(",") if v.strip()]
    if not vals:
        raise UsageError("empty grid")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bargmann-ritz", description="Variational and Ritz oscillator energies.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON file with RunConfig fields; flags win")
        s.add_argument("--model", choices=[f.value for f in Family] + list(MODEL_ALIASES))
        s.add_argument("--lambda", dest="lambda", type=float)
        s.add_argument("--mu", type=float)
        s.add_argument("--power", type=int, help="n in lam x^(2n)")
        s.add_argument("--dim", type=int)
        s.add_argument("--tol", type=float)
        s.add_argument("--order", type=int, help="Gauss-Hermite order per axis")
        s.add_argument("--format", choices=("json", "csv"))
        s.add_argument("--out")
        if name in ("minimize", "sweep"):
            s.add_argument("--family", choices=TRIAL_FAMILIES)
        if name == "spectrum":
            s.add_argument("-k", "--levels", type=int)
            s.add_argument("--cap", type=int, help="largest Fock truncation")
        if name == "validate":
            s.add_argument("--all", action="store_true", default=None)
            s.add_argument("--formula", action="append", choices=[f.value for f in cf.FormulaId])
        if name == "sweep":
            s.add_argument("--grid", help='coupling grid: "a,b,c" or "lo:hi:count" (log spaced)')
    return p


def parse_config(argv) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    if command is None:
        raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
    merged = dict(DEFAULTS)
    path = args.pop("config", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                from_file = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        unknown = set(from_file) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(from_file)
    merged.update({k: v for k, v in args.items() if v is not None})
    model = MODEL_ALIASES.get(merged["model"], merged["model"])
    grid = merged["grid"]
    if isinstance(grid, str):
        grid = _parse_grid(grid)
    formulas = merged["formula"] or []
    if isinstance(formulas, str):
        formulas = [formulas]
    return RunConfig(command, model, float(merged["lambda"]), float(merged["mu"]),
                     int(merged["power"]), int(merged["dim"]), merged["family"], list(formulas),
                     bool(merged["all"]), list(grid or []), float(merged["tol"]),
                     int(merged["order"]), merged["format"], merged["out"],
                     int(merged["levels"]), int(merged["cap"]))


# --- commands --------------------------------------------------------------------------------

def _exact_ground(model: ModelSpec, tol: float = 1e-10, cap: int = 4096) -> float:
    e1 = converged_spectrum(model.single_mode(), 1, max(tol, 1e-12), cap=cap).values[0]
    return dimension_total_energy(model.d, float(e1))


def _minimize_single(model: ModelSpec, family: str, tol: float) -> opt.MinimizeResult:
    """Single-mode variational minimum for one trial family."""
    single = model.single_mode()
    if family == "gaussian":
        if single.family is Family.HARMONIC:
            return opt.MinimizeResult(PositionGaussian(1.0), 0.5, 0.0, 0, (1.0, 1.0))
        if single.family is Family.QUARTIC:
            a = opt.cardano_root(single.lam) if single.lam > 0 else 1.0
            return opt.MinimizeResult(PositionGaussian(a), trial_energy(PositionGaussian(a), single),
                                      abs(opt.gauss_width_gradient(a, single.lam)), 1, (a, a))
        if single.family is Family.POWER2N:
            a = opt.stationary_width(single.n, single.lam) if single.lam > 0 else 1.0
            return opt.MinimizeResult(PositionGaussian(a), trial_energy(PositionGaussian(a), single),
                                      abs(opt.gauss_width_gradient(a, single.lam, single.n)), 1,
                                      (a, a))
        r = opt.minimize_scalar(lambda a: trial_energy(PositionGaussian(a), single),
                                (0.02, 40.0), tol)
        return opt.MinimizeResult(PositionGaussian(r.params_opt), r.energy_opt, r.gradient_norm,
                                  r.iterations, r.bracket_used, r.stationary_points)
    if family == "coherent":
        if single.family is Family.POWER2N:
            r = opt.minimize_scalar(lambda g: trial_energy(Coherent(g), single), (-4.0, 4.0), tol)
            return opt.MinimizeResult(Coherent(r.params_opt), r.energy_opt, r.gradient_norm,
                                      r.iterations, r.bracket_used, r.stationary_points)
        return opt.minimize_displaced(single, Coherent(0.0), tol)
    if family == "squeezed":
        f = lambda a: quadrature_energy(BargmannSqueezed(a), single).value
        r = opt.minimize_scalar(f, (-0.45, 0.45), max(tol, 1e-8))
        return opt.MinimizeResult(BargmannSqueezed(r.params_opt), r.energy_opt, r.gradient_norm,
                                  r.iterations, r.bracket_used, r.stationary_points)
    if family == "displaced-gaussian":
        return opt.minimize_displaced(single, PositionGaussian(1.0, 0.0), tol)
    raise UsageError(f"unknown family {family!r}")


def cmd_minimize(cfg: RunConfig) -> dict:
    model = cfg.model_spec()
    r = _minimize_single(model, cfg.family, cfg.tol)
    e_var = dimension_total_energy(model.d, r.energy_opt)
    e0 = _exact_ground(model)
    out = r.to_dict()
    out.update({
        "model": model.to_dict(),
        "family": cfg.family,
        "energy_opt": e_var,
        "energy_per_mode": r.energy_opt,
        "oracle_energy": e0,
        "oracle_gap": e_var - e0,
    })
    p = r.params_opt
    if isinstance(p, PositionGaussian):
        out["alpha_opt"] = p.alpha
        out["beta_opt"] = p.beta
    elif isinstance(p, BargmannSqueezed):
        out["alpha_opt"] = p.alpha
    elif isinstance(p, Coherent):
        out["gamma_opt"] = complex(p.gamma).real
    return out


def cmd_spectrum(cfg: RunConfig) -> dict:
    model = cfg.model_spec()
    res = converged_spectrum(model.single_mode(), cfg.levels, max(cfg.tol, 1e-12), cap=cfg.cap)
    out = res.to_dict()
    out["model"] = model.to_dict()
    out["total_ground"] = dimension_total_energy(model.d, float(res.values[0]))
    return out


def cmd_validate(cfg: RunConfig) -> list:
    if cfg.all or not cfg.formulas:
        return [r.to_dict() for r in validate_all(cfg.lam, cfg.mu, cfg.order)]
    params = {"lambda": cfg.lam, "mu": cfg.mu, "power": cfg.power, "d": cfg.dim}
    return [validate_formula(f, params, cfg.order).to_dict() for f in cfg.formulas]


def _sweep_point(cfg: RunConfig, lam: float) -> dict:
    model = cfg.model_spec(lam)
    r = _minimize_single(model, cfg.family, cfg.tol)
    e_var = dimension_total_energy(model.d, r.energy_opt)
    e0 = _exact_ground(model)
    p = r.params_opt
    alpha = getattr(p, "alpha", None)
    if alpha is None:
        alpha = complex(p.gamma).real
    return {"lambda": lam, "mu": model.mu if model.family is Family.CUBIC_QUARTIC else None,
            "power": model.n if model.family is Family.POWER2N else None,
            "alpha_opt": alpha, "energy_var": e_var, "energy_exact": e0, "gap": e_var - e0}


def worker_count() -> int:
    raw = os.environ.get("VW_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise UsageError(f"VW_THREADS must be an integer, got {raw!r}") from None
        if n < 1:
            raise UsageError("VW_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def cmd_sweep(cfg: RunConfig) -> list:
    # executor.map yields in submission order, so rows follow the grid
    with ThreadPoolExecutor(max_workers=min(worker_count(), len(cfg.grid))) as pool:
        return list(pool.map(lambda lam: _sweep_point(cfg, lam), cfg.grid))


def _row(section, name, params, computed, reference, note=""):
    dev = None if reference is None else computed - reference
    return {"section": section, "name": name, "params": params, "computed": computed,
            "reference": reference, "deviation": dev, "note": note}


def cmd_report(cfg: RunConfig) -> list:
    rows = []
    for r in validate_all(cfg.lam, cfg.mu, cfg.order):
        rows.append(_row("validation", f"{r.formula}:{r.quantity}", r.params, r.oracle_value,
                         r.paper_value, r.note if r.flagged else "clean" if r.clean else "dirty"))

    e_fit = opt.fit_series(lambda l: opt.gauss_quartic_minimum(l)[1])
    _, c2 = opt.gauss_quartic_expansion()
    rows.append(_row("fits", "gauss_quartic_lambda1", {}, e_fit.coefficients[1], 0.75))
    rows.append(_row("fits", "gauss_quartic_lambda2", {}, e_fit.coefficients[2], c2,
                     "reference: expansion of E at the Cardano root"))
    rows.append(_row("fits", "gauss_quartic_lambda2_tabulated", {}, e_fit.coefficients[2],
                     cf.GAUSS_QUARTIC_LAMBDA2_TABULATED, "tabulated -21/8"))
    rows.append(_row("fits", "gauss_quartic_lambda2_perturbative", {}, e_fit.coefficients[2],
                     cf.GAUSS_QUARTIC_LAMBDA2_PERTURBATIVE, "perturbative -9/8"))
    for n in (2, 3):
        w_fit = opt.fit_series(lambda l: opt.stationary_width(n, l))
        slope, _ = opt.gauss_power_expansion(n)
        rows.append(_row("fits", "width_slope", {"power": n}, w_fit.coefficients[1], slope,
                         "reference: n(2n-1)!!/2^(n-1)"))
        rows.append(_row("fits", "width_slope_tabulated", {"power": n}, w_fit.coefficients[1],
                         cf.power_width_slope(n), "tabulated 1 - n(2n-1) lam"))
    mu_fit = 0.1
    d_fit = opt.fit_series(lambda l: opt.displaced_coherent_minimum(l, mu_fit)[1])
    g1, d2 = opt.displaced_coherent_expansion(mu_fit)
    rows.append(_row("fits", "displaced_lambda2", {"mu": mu_fit}, d_fit.coefficients[2], d2,
                     "reference: expansion of the tabulated functional's minimum"))
    rows.append(_row("fits", "displaced_lambda2_tabulated", {"mu": mu_fit},
                     d_fit.coefficients[2], cf.DISPLACED_LAMBDA2, "tabulated -9/4"))

    for model in standard_models():
        fock = _exact_ground(model)
        fd = fd_ground_energy(model)
        rows.append(_row("cross_oracle", model.family.value, model.to_dict(), fd, fock,
                         "finite differences vs converged Fock Ritz"))
    return rows


def standard_models() -> list[ModelSpec]:
    return [ModelSpec(Family.QUARTIC, lam=0.1), ModelSpec(Family.POWER2N, lam=0.1, n=2),
            ModelSpec(Family.POWER2N, lam=0.1, n=3),
            ModelSpec(Family.CUBIC_QUARTIC, lam=0.05, mu=0.1)]


HANDLERS = {"minimize": (cmd_minimize, "minimize"), "spectrum": (cmd_spectrum, "spectrum"),
            "validate": (cmd_validate, "validation"), "sweep": (cmd_sweep, "sweep"),
            "report": (cmd_report, "report")}


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else list(argv))
    except UsageError as exc:
        stderr.write(build_parser().format_usage())
        stderr.write(f"error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 1
    handler, kind = HANDLERS[cfg.command]
    try:
        result = handler(cfg)
        emit_report(result, cfg.fmt, cfg.out, kind=kind, stream=stdout)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except COMPUTE_ERRORS as exc:
        stderr.write(f"computation failed: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
