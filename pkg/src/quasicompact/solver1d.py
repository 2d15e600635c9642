"""Crank-Nicolson quasi-compact time stepping for the 1D two-sided problem

    u_t = K1 D_left^alpha u + K2 D_right^alpha u + f,   x in (x_L, x_R),

with Dirichlet data on both ends. Each step solves

    (T - Ã) U^{n+1} = (T + Ã) U^n + tau F^n + H^n,
    Ã = tau / (2 h^alpha) (K1 A + K2 A^T),

where ``T = tridiag(c)``, ``A`` is the Toeplitz matrix of the combined
Grünwald weights and ``H^n`` carries the boundary values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grunwald import check_alpha, weights_for
from .linalg import DenseLU, assemble_A, assemble_T, lu_factor, lu_solve
from .schemes import SchemeSpec


class ConfigurationError(ValueError):
    pass


@dataclass
class Problem1D:
    """Fractional diffusion problem on ``[x_L, x_R] x [0, T_final]``.

    ``source(x, t)``, ``u0(x)`` and ``exact(x, t)`` must accept arrays in ``x``.
    """

    alpha: float
    K1: float
    K2: float
    source: Callable
    u0: Callable
    phi_L: Callable
    phi_R: Callable
    exact: Callable | None = None
    x_L: float = 0.0
    x_R: float = 1.0
    T_final: float = 1.0
    name: str = ""

    def __post_init__(self):
        check_alpha(self.alpha)
        if self.K1 < 0 or self.K2 < 0 or self.K1 == 0 and self.K2 == 0:
            raise ConfigurationError("need K1, K2 >= 0 and not both zero")
        if not self.x_R > self.x_L:
            raise ConfigurationError("empty domain")
        if self.T_final <= 0:
            raise ConfigurationError("T_final must be positive")
        for x, phi in ((self.x_L, self.phi_L), (self.x_R, self.phi_R)):
            u, b = float(self.u0(np.array([x]))[0]), float(phi(0.0))
            if abs(u - b) > 1e-12 * max(1.0, abs(b)):
                raise ConfigurationError(
                    f"initial data {u} incompatible with boundary value {b} at x={x}")


@dataclass
class LinearSystemBundle:
    """Everything a time step needs, assembled once."""

    problem: Problem1D
    scheme: SchemeSpec
    N: int
    h: float
    tau: float
    w: np.ndarray
    T: np.ndarray
    A: np.ndarray
    left: np.ndarray
    right: np.ndarray
    lu: DenseLU
    x: np.ndarray = field(repr=False)

    @property
    def ratio(self) -> float:
        return self.tau / (2.0 * self.h ** self.problem.alpha)


@dataclass
class SolveResult1D:
    N: int
    h: float
    M: int
    tau: float
    x: np.ndarray
    U: np.ndarray
    history: list | None = None

    @property
    def interior(self) -> np.ndarray:
        return self.U[1:-1]


def check_two_sided(problem, scheme: SchemeSpec):
    if problem.K1 * problem.K2 != 0 and not scheme.symmetric_c:
        raise ConfigurationError(
            f"scheme {scheme.label} has c_-1 != c_1; two-sided problems need a symmetric stencil")


def assemble_cn(problem: Problem1D, scheme: SchemeSpec, N: int, tau: float) -> LinearSystemBundle:
    check_two_sided(problem, scheme)
    if N < 2:
        raise ConfigurationError("need N >= 2")
    n = N - 1
    h = (problem.x_R - problem.x_L) / N
    w = weights_for(scheme.d, problem.alpha, N + 1).w
    T = assemble_T(scheme.c, n).dense()
    A = assemble_A(w, n).dense()
    At = tau / (2.0 * h ** problem.alpha) * (problem.K1 * A + problem.K2 * A.T)
    left, right = T - At, T + At
    x = problem.x_L + h * np.arange(N + 1)
    return LinearSystemBundle(problem, scheme, N, h, tau, w, T, A, left, right,
                              lu_factor(left), x)


def boundary_vectors(bundle: LinearSystemBundle) -> tuple:
    """Coefficient vectors multiplying ``U_0`` and ``U_N`` in the fractional terms.

    Row ``i`` of the left operator reaches ``U_0`` through ``w_{i+1}`` and
    ``U_N`` through ``w_0`` (last row only); the right operator mirrors this.
    """
    p, N, w = bundle.problem, bundle.N, bundle.w
    i = np.arange(1, N)
    v0 = p.K1 * w[i + 1]
    v0[0] += p.K2 * w[0]
    vN = p.K2 * w[N - i + 1]
    vN[-1] += p.K1 * w[0]
    return v0, vN


def boundary_term(bundle: LinearSystemBundle, b_old: tuple, b_new: tuple) -> np.ndarray:
    """``H^n`` from boundary values ``(U_0, U_N)`` at ``t_n`` and ``t_{n+1}``."""
    cm, _, c1 = bundle.scheme.c
    v0, vN = boundary_vectors(bundle)
    H = bundle.ratio * (v0 * (b_old[0] + b_new[0]) + vN * (b_old[1] + b_new[1]))
    H[0] += cm * (b_old[0] - b_new[0])
    H[-1] += c1 * (b_old[1] - b_new[1])
    return H


def source_term(bundle: LinearSystemBundle, fvals: np.ndarray) -> np.ndarray:
    """c-weighted source ``c_{-1} f_{i-1} + c_0 f_i + c_1 f_{i+1}`` for nodal values."""
    cm, c0, c1 = bundle.scheme.c
    return cm * fvals[:-2] + c0 * fvals[1:-1] + c1 * fvals[2:]


def step(bundle: LinearSystemBundle, U: np.ndarray, t_n: float) -> np.ndarray:
    """Advance the full nodal vector ``U`` (length ``N + 1``) from ``t_n``."""
    p, tau = bundle.problem, bundle.tau
    t_new = t_n + tau
    b_old = (U[0], U[-1])
    b_new = (float(p.phi_L(t_new)), float(p.phi_R(t_new)))
    f = np.asarray(p.source(bundle.x, t_n + 0.5 * tau), dtype=float)
    rhs = (bundle.right @ U[1:-1] + tau * source_term(bundle, f)
           + boundary_term(bundle, b_old, b_new))
    out = np.empty_like(U)
    out[0], out[-1] = b_new
    out[1:-1] = lu_solve(bundle.lu, rhs)
    return out


TAU_RULES = ("h", "h/20", "h^2")


def tau_from_rule(tau_rule, h: float) -> float:
    """Time step for ``"h"``, ``"h/20"``, ``"h^2"`` or an explicit positive number."""
    if isinstance(tau_rule, str):
        key = tau_rule.replace(" ", "").replace("**", "^")
        rules = {"h": h, "h/20": h / 20.0, "h^2": h * h}
        if key in rules:
            return rules[key]
        try:
            tau = float(key)
        except ValueError:
            raise ConfigurationError(f"unknown tau rule {tau_rule!r}") from None
    else:
        tau = float(tau_rule)
    if not tau > 0:
        raise ConfigurationError("time step must be positive")
    return tau


def resolve_tau(tau_rule, h: float, T_final: float) -> tuple:
    """``(M, tau)`` with ``M = ceil(T_final / tau)`` steps shrunk to land on ``T_final``."""
    tau = tau_from_rule(tau_rule, h)
    M = max(1, math.ceil(T_final / tau - 1e-9))
    return M, T_final / M


def initial_state(problem: Problem1D, x: np.ndarray) -> np.ndarray:
    U = np.asarray(problem.u0(x), dtype=float).copy()
    U[0], U[-1] = problem.phi_L(0.0), problem.phi_R(0.0)
    return U


def solve(problem: Problem1D, scheme: SchemeSpec, N: int, tau_rule="h",
          keep_history: bool = False) -> SolveResult1D:
    h = (problem.x_R - problem.x_L) / N
    M, tau = resolve_tau(tau_rule, h, problem.T_final)
    bundle = assemble_cn(problem, scheme, N, tau)
    U = initial_state(problem, bundle.x)
    history = [U.copy()] if keep_history else None
    for n in range(M):
        U = step(bundle, U, n * tau)
        if keep_history:
            history.append(U.copy())
    return SolveResult1D(N, h, M, tau, bundle.x, U, history)


def discrete_l2(U, V, h: float) -> float:
    """``sqrt(h * sum (U - V)^2)`` for interior grid values."""
    U, V = np.asarray(U, dtype=float), np.asarray(V, dtype=float)
    if U.shape != V.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {V.shape}")
    return math.sqrt(h * float(np.sum((U - V) ** 2)))


def final_error(problem: Problem1D, result: SolveResult1D) -> float:
    exact = problem.exact(result.x, problem.T_final)
    return discrete_l2(result.interior, exact[1:-1], result.h)
