"""Dense linear algebra for the CN systems: tridiagonal and Toeplitz matrices,
LU factorizations reused across time steps, and spectral-radius estimates.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg as sla

from .grunwald import CombinedWeights


class SingularMatrixError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class Tridiag:
    """Constant-diagonal tridiagonal matrix ``tridiag(sub, diag, sup)``."""

    n: int
    sub: float
    diag: float
    sup: float

    def dense(self) -> np.ndarray:
        n = self.n
        return (np.diag(np.full(n, self.diag))
                + np.diag(np.full(n - 1, self.sup), 1)
                + np.diag(np.full(n - 1, self.sub), -1))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Apply along axis 0, so ``v`` may hold several columns."""
        out = self.diag * v
        out[1:] += self.sub * v[:-1]
        out[:-1] += self.sup * v[1:]
        return out


@dataclass(frozen=True)
class ToeplitzLower:
    """Lower Hessenberg Toeplitz matrix with entry ``(i, j) = w[i - j + 1]``."""

    n: int
    w: np.ndarray

    @property
    def col(self) -> np.ndarray:
        return self.w[1:self.n + 1]

    @property
    def row(self) -> np.ndarray:
        r = np.zeros(self.n)
        r[0] = self.w[1]
        if self.n > 1:
            r[1] = self.w[0]
        return r

    def dense(self) -> np.ndarray:
        return sla.toeplitz(self.col, self.row)


def assemble_T(c, n: int) -> Tridiag:
    cm, c0, c1 = (float(v) for v in c)
    return Tridiag(n, cm, c0, c1)


def assemble_A(w: CombinedWeights | np.ndarray, n: int) -> ToeplitzLower:
    w = np.asarray(w.w if isinstance(w, CombinedWeights) else w, dtype=float)
    if len(w) < n + 1:
        raise ValueError(f"need at least {n + 1} weights for dimension {n}, got {len(w)}")
    return ToeplitzLower(n, w[: n + 1].copy())


def compact_full(c, N: int) -> np.ndarray:
    """``(N-1) x (N+1)`` matrix with the c-stencil in every row, boundary columns included."""
    M = np.zeros((N - 1, N + 1))
    r = np.arange(N - 1)
    for o, co in zip((0, 1, 2), c):
        M[r, r + o] = co
    return M


def tridiag_eigs(c, n: int) -> np.ndarray:
    """Eigenvalues ``c_0 + 2 sqrt(c_{-1} c_1) cos(j pi / (n+1))``, ``j = 1..n``."""
    cm, c0, c1 = (float(v) for v in c)
    if cm * c1 < 0:
        raise ValueError("c_{-1} c_1 < 0 gives a complex spectrum")
    j = np.arange(1, n + 1)
    return c0 + 2.0 * math.sqrt(cm * c1) * np.cos(j * np.pi / (n + 1))


@dataclass(frozen=True)
class DenseLU:
    lu: np.ndarray
    piv: np.ndarray

    @property
    def n(self) -> int:
        return self.lu.shape[0]


def lu_factor(M: np.ndarray) -> DenseLU:
    """Partial-pivoting LU; raises :class:`SingularMatrixError` on a zero pivot."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    with warnings.catch_warnings():
        # a zero pivot is reported below as SingularMatrixError
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.size and pivots.min() <= np.finfo(float).tiny:
        raise SingularMatrixError("matrix is singular to working precision")
    return DenseLU(lu, piv)


def lu_solve(lu: DenseLU, rhs: np.ndarray) -> np.ndarray:
    return sla.lu_solve((lu.lu, lu.piv), rhs, check_finite=False)


@dataclass(frozen=True)
class SpectralRadius:
    value: float
    iterations: int
    converged: bool

    def __float__(self):
        return self.value


def spectral_radius_estimate(apply: Callable[[np.ndarray], np.ndarray], n: int,
                             max_iters: int = 512, tol: float = 1e-6,
                             window: int = 16, seed: int = 0) -> SpectralRadius:
    """Estimate the spectral radius of a linear operator from norm growth.

    Repeatedly applies the operator to a normalized random vector and takes the
    geometric-mean growth factor over the latest ``window`` steps. Averaging
    over a window lets complex-conjugate dominant pairs settle too. Stops once
    two consecutive windows agree to relative ``tol``.
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    logs: list[float] = []
    est, prev = math.nan, math.nan
    for k in range(1, max_iters + 1):
        w = apply(v)
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            return SpectralRadius(0.0, k, True)
        logs.append(math.log(nrm))
        v = w / nrm
        if k >= 2 * window and k % window == 0:
            est = math.exp(sum(logs[-window:]) / window)
            prev = math.exp(sum(logs[-2 * window:-window]) / window)
            if abs(est - prev) <= tol * est:
                return SpectralRadius(est, k, True)
    if math.isnan(est):
        m = min(window, len(logs))
        est = math.exp(sum(logs[-m:]) / m)
    return SpectralRadius(est, max_iters, False)
