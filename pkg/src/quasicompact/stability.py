"""Stability instruments for the CN quasi-compact schemes.

* the generating function of the symmetric part of the differentiation matrix,
  whose sign on [0, pi] decides negative definiteness (Grenander-Szegő);
* the spectral radius of the CN iteration matrix
  ``B = (T - Ã)^{-1} (T + Ã)``, ``Ã = tau / (2 h^alpha) (K1 A + K2 A^T)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grunwald import check_alpha, weights_for
from .linalg import assemble_A, assemble_T, lu_factor, lu_solve, spectral_radius_estimate
from .schemes import SchemeSpec, beta

STABLE_TOL = 1e-8
UNSTABLE_TOL = 1e-6
POSITIVE_TOL = 1e-12


@dataclass(frozen=True)
class StabilityVerdict:
    label: str
    alpha: float
    N: int
    tau_over_halpha: float
    f_max: float
    rho: float
    verdict: str
    converged: bool = True

    def csv_row(self) -> str:
        return (f"{self.label},{self.alpha:g},{self.N},{self.tau_over_halpha:.6e},"
                f"{self.f_max:.6e},{self.rho:.10f},{self.verdict}")

    CSV_HEADER = "label,alpha,N,tau_over_halpha,f_max,rho,verdict"


def generating_fn(scheme: SchemeSpec, alpha: float, x):
    """Generating function of ``(A + A^T)/2`` on ``[0, pi]`` in closed form."""
    alpha = check_alpha(alpha)
    b = beta(alpha)
    x = np.asarray(x, dtype=float)
    xi = np.pi - x
    dm, d0, d1 = scheme.d
    bracket = (-dm * np.cos((2 - b) * xi) + d0 * np.cos((1 - b) * xi)
               - d1 * np.cos(b * xi))
    out = (2.0 * np.sin(x / 2.0)) ** alpha * bracket
    return float(out) if out.ndim == 0 else out


def truncated_symbol(scheme: SchemeSpec, alpha: float, x, K: int = 2000):
    """``sum_{k=0}^K w_k cos((k-1) x)``, the symmetric-part symbol summed directly."""
    w = weights_for(scheme.d, alpha, K).w
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.arange(K + 1) - 1
    return np.cos(np.outer(x, k)) @ w


def definiteness_check(scheme: SchemeSpec, alpha: float, samples: int = 4096) -> tuple:
    """Return ``(f_max, negative_definite)`` from a uniform grid on ``[0, pi]``."""
    if samples < 256:
        raise ValueError("use at least 256 samples")
    f = generating_fn(scheme, alpha, np.linspace(0.0, np.pi, samples))
    f_max = float(f.max())
    negative = f_max <= POSITIVE_TOL and bool(np.any(f < -POSITIVE_TOL))
    return f_max, negative


def remark_conditions(scheme: SchemeSpec) -> dict:
    """Sufficient-looking conditions for stability with a nonsymmetric T.

    Only observed numerically, never proven; reported next to the empirical
    verdict.
    """
    cm, c0, c1 = scheme.c
    dm, d0, d1 = scheme.d
    return {
        "c_dominant": c0 > abs(c1) + abs(cm),
        "d_dominant": d1 > abs(d0) + abs(dm),
    }


def cn_matrices(scheme: SchemeSpec, alpha: float, K1: float, K2: float, N: int, tau: float):
    """Dense ``(T - Ã, T + Ã)`` of size ``N - 1`` on ``[0, 1]``."""
    n = N - 1
    h = 1.0 / N
    T = assemble_T(scheme.c, n).dense()
    A = assemble_A(weights_for(scheme.d, alpha, N + 1), n).dense()
    At = tau / (2.0 * h ** alpha) * (K1 * A + K2 * A.T)
    return T - At, T + At


def classify(rho: float) -> str:
    if rho <= 1.0 + STABLE_TOL:
        return "stable"
    if rho > 1.0 + UNSTABLE_TOL:
        return "unstable"
    return "indeterminate"


def iteration_spectral_radius(scheme: SchemeSpec, alpha: float, K1: float, K2: float,
                              N: int, tau: float, max_iters: int = 512,
                              tol: float = 1e-6) -> StabilityVerdict:
    if K1 < 0 or K2 < 0 or K1 == 0 and K2 == 0:
        raise ValueError("need K1, K2 >= 0, not both zero")
    if K1 * K2 != 0 and not scheme.symmetric_c:
        raise ValueError("two-sided problems need a symmetric compact stencil")
    alpha = check_alpha(alpha)
    left, right = cn_matrices(scheme, alpha, K1, K2, N, tau)
    lu = lu_factor(left)
    est = spectral_radius_estimate(lambda v: lu_solve(lu, right @ v), N - 1, max_iters, tol)
    f_max, _ = definiteness_check(scheme, alpha)
    h = 1.0 / N
    return StabilityVerdict(scheme.label, alpha, N, tau / h ** alpha, f_max,
                            est.value, classify(est.value), est.converged)


def sweep_unstable(scheme: SchemeSpec, alpha: float, N: int, taus, K1: float = 1.0,
                   K2: float = 0.0) -> tuple:
    """Run a tau sweep; the scheme is unstable if any point is."""
    verdicts = [iteration_spectral_radius(scheme, alpha, K1, K2, N, t) for t in taus]
    return any(v.verdict == "unstable" for v in verdicts), verdicts


def rho_exact(scheme: SchemeSpec, alpha: float, K1: float, K2: float, N: int, tau: float) -> float:
    """Spectral radius from a dense eigensolve; a cross-check for the estimator."""
    left, right = cn_matrices(scheme, alpha, K1, K2, N, tau)
    B = np.linalg.solve(left, right)
    return float(np.max(np.abs(np.linalg.eigvals(B))))

