"""Finite-difference position-space diagonalization.

Independent of the Fock basis: the three-point Laplacian on a uniform grid
with Dirichlet walls, eigenvalues by Sturm-sequence bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import ModelSpec, potential_value

MIN_POINTS = 64
EIG_TOL = 1e-12
ACTION_MIN = 25.0  # WKB decay exponent required at the walls: |psi|^2 ~ exp(-2 * 25)
MAX_EXPANSIONS = 2


class FDError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grid1D:
    half_width: float
    points: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise FDError("half width must be positive")
        if self.points < MIN_POINTS:
            raise FDError(f"need at least {MIN_POINTS} points, got {self.points}")

    @property
    def h(self) -> float:
        return 2 * self.half_width / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.points)

    def refined(self) -> "Grid1D":
        """Same box, spacing halved."""
        return Grid1D(self.half_width, 2 * self.points - 1)


def fd_hamiltonian(model: ModelSpec, grid: Grid1D) -> tuple[np.ndarray, np.ndarray]:
    h2 = grid.h**2
    diag = 1.0 / h2 + potential_value(model, grid.nodes)
    off = np.full(grid.points - 1, -0.5 / h2)
    return diag, off


def sturm_count(diag, off, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift (LDL^T inertia)."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    e2 = np.asarray(off, dtype=float) ** 2
    tiny = np.finfo(float).tiny ** 0.5
    q = diag[0] - shifts
    q[q == 0] = -tiny
    count = (q < 0).astype(np.int64)
    for i in range(1, len(diag)):
        q = diag[i] - shifts - e2[i - 1] / q
        q[q == 0] = -tiny
        count += q < 0
    return count


def tridiag_eigen(diag, off, k: int, tol: float = EIG_TOL, sections: int = 63) -> np.ndarray:
    """k smallest eigenvalues of a symmetric tridiagonal matrix, ascending.

    Multisection on Sturm counts: every pass evaluates ``sections`` interior
    shifts per unresolved eigenvalue, so each pass narrows a bracket by a
    factor of ``sections + 1``.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    m = diag.size
    if off.size != max(m - 1, 0):
        raise FDError("off-diagonal must have one entry fewer than the diagonal")
    if not 1 <= k <= m:
        raise FDError(f"k must be in [1, {m}], got {k}")
    if m == 1:
        return diag.copy()
    r = np.zeros(m)
    r[:-1] += np.abs(off)
    r[1:] += np.abs(off)
    lo0, hi0 = float(np.min(diag - r)), float(np.max(diag + r))
    pad = 1e-12 * max(1.0, abs(lo0), abs(hi0))
    lo = np.full(k, lo0 - pad)
    hi = np.full(k, hi0 + pad)
    idx = np.arange(k)
    frac = np.arange(1, sections + 1) / (sections + 1)
    while True:
        floor = 4 * np.finfo(float).eps * np.maximum(np.abs(lo), np.abs(hi))
        active = np.flatnonzero(hi - lo > np.maximum(tol, floor))
        if active.size == 0:
            break
        shifts = (lo[active, None] + (hi - lo)[active, None] * frac).ravel()
        counts = sturm_count(diag, off, shifts).reshape(active.size, sections)
        for row, j in enumerate(active):
            # eigenvalue j lies where the count first exceeds j
            below = counts[row] <= idx[j]
            pts = shifts.reshape(active.size, sections)[row]
            n_below = int(below.sum())  # counts are monotone in the shift
            new_lo = pts[n_below - 1] if n_below > 0 else lo[j]
            new_hi = pts[n_below] if n_below < sections else hi[j]
            lo[j], hi[j] = new_lo, new_hi
    return 0.5 * (lo + hi)


def fd_levels(model: ModelSpec, grid: Grid1D, k: int = 1) -> np.ndarray:
    d, e = fd_hamiltonian(model, grid)
    return tridiag_eigen(d, e, k)


def _decay_action(model: ModelSpec, energy: float, wall: float) -> float:
    """WKB exponent int sqrt(2 (V - E)) dx from the outermost turning point to ``wall``."""
    xs = np.linspace(0.0, wall, 4001)
    best = math.inf
    for sign in (1.0, -1.0):
        v = potential_value(model, sign * xs)
        excess = np.clip(v - energy, 0.0, None)
        forbidden = v > energy
        # start from the last allowed point
        start = np.flatnonzero(~forbidden)
        i0 = start[-1] if start.size else 0
        integrand = np.sqrt(2 * excess[i0:])
        best = min(best, float(np.trapezoid(integrand, xs[i0:])))
    return best


def box_ok(model: ModelSpec, energy: float, half_width: float) -> bool:
    walls = potential_value(model, np.array([-half_width, half_width]))
    return bool(np.all(walls >= 10 * energy)) and _decay_action(model, energy, half_width) >= ACTION_MIN


def default_half_width(model: ModelSpec, energy: float) -> float:
    """Smallest box (0.5 steps) meeting the wall conditions."""
    L = 2.0
    while not box_ok(model, energy, L):
        L += 0.5
        if L > 200:
            raise FDError("potential does not confine within |x| <= 200")
    return L


def fd_ground_energy(model: ModelSpec, L: float | None = None, m: int = 2048,
                     refine: bool = True, k: int = 1) -> float | np.ndarray:
    """Ground energy (or k lowest levels) with optional Richardson step.

    The box grows (doubling, at most twice) until the walls sit at
    V >= 10 E and deep in the classically forbidden region.
    """
    if m < 256:
        raise FDError(f"m must be >= 256, got {m}")
    single = model.single_mode()
    estimate = float(fd_levels(single, Grid1D(8.0 if L is None else L, 256), 1)[0])
    if L is None:
        L = default_half_width(single, estimate)
    else:
        for _ in range(MAX_EXPANSIONS + 1):
            if box_ok(single, estimate, L):
                break
            L *= 2
        else:
            raise FDError(f"box too small after {MAX_EXPANSIONS} expansions (L={L / 2})")
    grid = Grid1D(L, m)
    coarse = fd_levels(single, grid, k)
    if refine:
        fine = fd_levels(single, grid.refined(), k)
        out = (4 * fine - coarse) / 3
    else:
        out = coarse
    return float(out[0]) if k == 1 else out


def richardson_ratio(model: ModelSpec, L: float, m: int = 512) -> float:
    """(E_h - E_h/2) / (E_h/2 - E_h/4); about 4 for a second-order scheme."""
    g = Grid1D(L, m)
    e1 = fd_levels(model, g)[0]
    e2 = fd_levels(model, g.refined())[0]
    e3 = fd_levels(model, g.refined().refined())[0]
    return float((e1 - e2) / (e2 - e3))
