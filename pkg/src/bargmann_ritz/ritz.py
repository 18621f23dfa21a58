"""Linear Rayleigh-Ritz in the normalized monomial basis phi_n = z^n / sqrt(n!).

The basis is orthonormal, so the overlap matrix is the identity and Hc = ESc
reduces to a symmetric eigenproblem. x = (z + d/dz)/sqrt(2) is tridiagonal
with X[n, n+1] = sqrt((n+1)/2).

Powers X^k are formed on a basis padded by k states and then cropped, which
makes H the exact projection of the Hamiltonian onto span{phi_0..phi_{N-1}}.
Ritz values are then true upper bounds that decrease monotonically in N.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .models import ModelSpec

START_N = 32
MAX_N = 4096


class RitzError(RuntimeError):
    pass


@dataclass
class RitzMatrices:
    size: int
    H: sp.csr_matrix
    model: ModelSpec
    bandwidth: int

    @property
    def S(self) -> sp.csr_matrix:
        return sp.identity(self.size, format="csr")

    def dense(self) -> np.ndarray:
        return self.H.toarray()

    def banded(self) -> np.ndarray:
        """Lower banded storage for ``scipy.linalg.eig_banded``."""
        u = self.bandwidth
        ab = np.zeros((u + 1, self.size))
        for k in range(u + 1):
            ab[k, : self.size - k] = self.H.diagonal(-k)
        return ab


@dataclass
class SpectrumResult:
    model: ModelSpec
    N: int
    k: int
    values: np.ndarray
    history: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "model": self.model.to_dict(),
            "N": self.N,
            "k": self.k,
            "values": [float(v) for v in self.values],
            "history": [{"N": n, "values": [float(v) for v in vals]} for n, vals in self.history],
        }


def _x_sparse(size: int) -> sp.csr_matrix:
    off = np.sqrt(np.arange(1, size) / 2.0)
    return sp.diags([off, off], [1, -1], shape=(size, size), format="csr")


def position_matrix(N: int) -> np.ndarray:
    if N < 2:
        raise RitzError(f"truncation must be >= 2, got {N}")
    return _x_sparse(N).toarray()


def x_power(N: int, k: int) -> sp.csr_matrix:
    """Exact N x N block of x^k in the Fock basis."""
    big = _x_sparse(N + k)
    out = sp.identity(N + k, format="csr")
    for _ in range(k):
        out = out @ big
    out = out[:N, :N].tocsr()
    return ((out + out.T) * 0.5).tocsr()


def hamiltonian_matrix(model: ModelSpec, N: int) -> RitzMatrices:
    if N < 2:
        raise RitzError(f"truncation must be >= 2, got {N}")
    top = max(model.anharmonic_terms(), default=0)
    if N < top:
        raise RitzError(f"N={N} is smaller than the highest power {top}")
    H = sp.diags(np.arange(N) + 0.5, 0, format="csr")
    for k, c in model.anharmonic_terms().items():
        H = H + c * x_power(N, k)
    H = H.tocsr()
    H.eliminate_zeros()
    return RitzMatrices(N, H, model, top)


def symmetric_eigen(matrix, k: int) -> np.ndarray:
    """k smallest eigenvalues of a dense symmetric matrix, ascending."""
    a = np.asarray(matrix.toarray() if sp.issparse(matrix) else matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise RitzError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise RitzError("matrix is not symmetric")
    n = a.shape[0]
    if not 1 <= k <= n:
        raise RitzError(f"k must be in [1, {n}], got {k}")
    return sla.eigh(a, eigvals_only=True, subset_by_index=[0, k - 1])


def _ritz_values(mats: RitzMatrices, k: int) -> np.ndarray:
    if not 1 <= k <= mats.size:
        raise RitzError(f"k must be in [1, {mats.size}], got {k}")
    if mats.bandwidth == 0:
        return np.sort(mats.H.diagonal())[:k]
    return sla.eig_banded(mats.banded(), lower=True, eigvals_only=True,
                          select="i", select_range=(0, k - 1))


def ritz_spectrum(model: ModelSpec, N: int, k: int) -> SpectrumResult:
    """k lowest Ritz values of the single-mode Hamiltonian at truncation N."""
    mats = hamiltonian_matrix(model.single_mode(), N)
    vals = _ritz_values(mats, k)
    return SpectrumResult(model, N, k, vals, [(N, vals)])


def converged_spectrum(model: ModelSpec, k: int = 1, tol: float = 1e-10,
                       start: int = START_N, cap: int = MAX_N) -> SpectrumResult:
    """Double N until the k tracked Ritz values move by less than ``tol``."""
    if tol < 1e-12:
        raise RitzError("tolerance below 1e-12 is not attainable in double precision")
    N = max(start, k)
    prev = ritz_spectrum(model, N, k).values
    history = [(N, prev)]
    while 2 * N <= cap:
        N *= 2
        cur = ritz_spectrum(model, N, k).values
        history.append((N, cur))
        if np.max(np.abs(cur - prev)) < tol:
            return SpectrumResult(model, N, k, cur, history)
        prev = cur
    err = RitzError(f"no convergence to {tol} by N={N}")
    err.history = history
    raise err
