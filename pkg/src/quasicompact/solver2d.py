"""Peaceman-Rachford ADI for the 2D two-sided problem on the unit square

    u_t = (D_{0,x} + D_{x,1})^alpha u + (D_{0,y} + D_{y,1})^beta u + f,

with zero Dirichlet data. Nodal values live in a matrix ``U[i, j] = u(x_i, y_j)``,
so a Kronecker product ``Lx ⊗ Ly`` acts as ``Lx @ U @ Ly.T``. Each step solves

    (Tx - tau/2 Ãx)(Ty - tau/2 Ãy) U^{n+1}
        = (Tx + tau/2 Ãx)(Ty + tau/2 Ãy) U^n + tau (Tx ⊗ Ty) F^{n+1/2}

with ``Ã = (A + A^T) / h^alpha`` in each direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grunwald import check_alpha, weights_for
from .linalg import DenseLU, assemble_A, assemble_T, compact_full, lu_factor, lu_solve
from .schemes import SchemeSpec, parse_label
from .solver1d import ConfigurationError, resolve_tau


@dataclass
class Problem2D:
    """Example-4.3-type problem; ``source``, ``u0`` and ``exact`` take meshgrid arrays."""

    alpha: float
    beta2: float
    source: Callable
    u0: Callable
    exact: Callable | None = None
    T_final: float = 1.0
    name: str = ""

    def __post_init__(self):
        check_alpha(self.alpha)
        check_alpha(self.beta2)
        if self.T_final <= 0:
            raise ConfigurationError("T_final must be positive")
        s = np.linspace(0.0, 1.0, 17)
        X, Y = np.meshgrid(s, s, indexing="ij")
        U = np.asarray(self.u0(X, Y), dtype=float)
        edges = np.concatenate((U[0], U[-1], U[:, 0], U[:, -1]))
        if np.max(np.abs(edges)) > 1e-12:
            raise ConfigurationError("initial data must vanish on the boundary")


@dataclass
class DirectionOperator:
    """Factors ``T ∓ tau/2 Ã`` for one coordinate direction."""

    T: np.ndarray
    T_full: np.ndarray
    left: np.ndarray
    right: np.ndarray
    lu: DenseLU


def direction_operator(scheme: SchemeSpec, alpha: float, N: int, tau: float) -> DirectionOperator:
    n = N - 1
    h = 1.0 / N
    T = assemble_T(scheme.c, n).dense()
    A = assemble_A(weights_for(scheme.d, alpha, N + 1), n).dense()
    half = 0.5 * tau / h ** alpha * (A + A.T)
    left = T - half
    return DirectionOperator(T, compact_full(scheme.c, N), left, T + half, lu_factor(left))


@dataclass
class SolveResult2D:
    N: int
    h: float
    M: int
    tau: float
    x: np.ndarray
    U: np.ndarray


def adi_step(ox: DirectionOperator, oy: DirectionOperator, U: np.ndarray,
             F: np.ndarray, tau: float) -> np.ndarray:
    """One step on interior values ``U``.

    ``F`` is the half-step source on the full ``(N+1) x (N+1)`` grid: the
    compact stencil of the first and last rows reaches the boundary nodes,
    where ``f`` does not vanish even though ``u`` does.
    """
    rhs = ox.right @ U @ oy.right.T + tau * (ox.T_full @ F @ oy.T_full.T)
    V = lu_solve(ox.lu, rhs)
    return lu_solve(oy.lu, V.T).T


def direction_schemes(problem: Problem2D, scheme, scheme_y: SchemeSpec | None = None) -> tuple:
    """Stencils for x and y; each is built at its own direction's order.

    ``scheme`` may be a label, which is then built for both orders.
    """
    if isinstance(scheme, str):
        sx, sy = parse_label(scheme, problem.alpha), parse_label(scheme, problem.beta2)
    else:
        sx = scheme
        if scheme_y is None:
            if problem.alpha != problem.beta2:
                raise ConfigurationError("stencils depend on the order; pass a label or scheme_y")
            scheme_y = scheme
        sy = scheme_y
    for s in (sx, sy):
        if not s.symmetric_c:
            raise ConfigurationError(f"scheme {s.label} has c_-1 != c_1; ADI needs a symmetric stencil")
    return sx, sy


def adi_solve(problem: Problem2D, scheme, N: int, tau_rule="h",
              scheme_y: SchemeSpec | None = None) -> SolveResult2D:
    """Final-time nodal grid ``(N+1) x (N+1)`` including the zero boundary."""
    sx, sy = direction_schemes(problem, scheme, scheme_y)
    if N < 2:
        raise ConfigurationError("need N >= 2")
    h = 1.0 / N
    M, tau = resolve_tau(tau_rule, h, problem.T_final)
    ox = direction_operator(sx, problem.alpha, N, tau)
    oy = direction_operator(sy, problem.beta2, N, tau)
    x = h * np.arange(N + 1)
    X, Y = np.meshgrid(x, x, indexing="ij")
    Xi, Yi = X[1:-1, 1:-1], Y[1:-1, 1:-1]
    U = np.asarray(problem.u0(Xi, Yi), dtype=float)
    for k in range(M):
        F = np.asarray(problem.source(X, Y, (k + 0.5) * tau), dtype=float)
        U = adi_step(ox, oy, U, F, tau)
    full = np.zeros((N + 1, N + 1))
    full[1:-1, 1:-1] = U
    return SolveResult2D(N, h, M, tau, x, full)


def discrete_l2_2d(U, V, h: float) -> float:
    """``sqrt(h^2 * sum (U - V)^2)`` for interior grid values."""
    U, V = np.asarray(U, dtype=float), np.asarray(V, dtype=float)
    if U.shape != V.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {V.shape}")
    D = U - V
    return h * math.sqrt(float(np.sum(D * D)))


def final_error_2d(problem: Problem2D, result: SolveResult2D) -> float:
    X, Y = np.meshgrid(result.x, result.x, indexing="ij")
    exact = problem.exact(X, Y, problem.T_final)
    return discrete_l2_2d(result.U[1:-1, 1:-1], exact[1:-1, 1:-1], result.h)
