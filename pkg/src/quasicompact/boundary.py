"""Quasi-compact schemes for problems whose solution does not vanish at x = 0.

The left RL derivative of ``u`` is split into the derivative of the Taylor
remainder ``r = u - sum_l u^(l)(0)/l! x^l`` and the exact derivatives of the
monomials. Taylor coefficients are read off grid samples with one-sided
weights ``a_j^l``:

    sum_j a_j^l u(x_j) = u^(l)(0)/l! h^l + O(h^{n+l+1}).

Grünwald sums are applied to ``r`` (the polynomial part is subtracted row by
row) and the monomial part is added back exactly through ``ds``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .grunwald import check_alpha, grunwald_coeffs
from .linalg import compact_full, lu_factor, lu_solve
from .schemes import SchemeSpec
from .solver1d import (ConfigurationError, Problem1D, SolveResult1D, initial_state,
                       resolve_tau)
from .specialfn import rgamma

MAX_CORRECTION_ORDER = 5


@dataclass(frozen=True)
class TaylorCoeffTable:
    """Weights ``a[l, j]``, ``l = 0..n``, ``j = 0..2n``; zero for ``j > n + l``."""

    n: int
    a: np.ndarray

    @property
    def width(self) -> int:
        return 2 * self.n + 1


def _lagrange_coeffs(m: int) -> list:
    """Monomial coefficients of the Lagrange basis on nodes ``0..m``, exactly."""
    rows = []
    for j in range(m + 1):
        poly = [Fraction(1)]
        for k in range(m + 1):
            if k == j:
                continue
            # multiply by (t - k) / (j - k)
            scale = Fraction(1, j - k)
            nxt = [Fraction(0)] * (len(poly) + 1)
            for e, v in enumerate(poly):
                nxt[e + 1] += v * scale
                nxt[e] -= v * k * scale
            poly = nxt
        rows.append(poly)
    return rows


def vandermonde_coeffs(n: int) -> TaylorCoeffTable:
    """Solve the moment systems ``sum_j a_j^l j^k = [k == l]``, ``k = 0..n+l``.

    The solution of each system is the ``t^l`` coefficient of the Lagrange
    basis on ``0..n+l``, computed in rational arithmetic.
    """
    if not 1 <= n <= MAX_CORRECTION_ORDER:
        raise ConfigurationError(f"correction order must lie in 1..{MAX_CORRECTION_ORDER}, got {n}")
    a = np.zeros((n + 1, 2 * n + 1))
    for l in range(n + 1):
        basis = _lagrange_coeffs(n + l)
        for j, poly in enumerate(basis):
            a[l, j] = float(poly[l])
    return TaylorCoeffTable(n, a)


def _monomial_ratios(alpha: float, n: int) -> np.ndarray:
    """``Gamma(l + 1) / Gamma(l + 1 - alpha)`` for ``l = 0..n``."""
    return np.array([math.factorial(l) * float(rgamma(l + 1 - alpha)) for l in range(n + 1)])


def ds_vector(table: TaylorCoeffTable, alpha: float, i: int, h: float) -> np.ndarray:
    """Weights on ``u(x_0..x_{2n})`` giving the exact derivative of the Taylor part at ``x_i``.

    Node 0 returns zeros: the derivative is unbounded there unless the data
    vanish, and the matching source value is replaced accordingly.
    """
    if i < 0:
        raise ValueError("node index must be nonnegative")
    if i == 0:
        return np.zeros(table.width)
    l = np.arange(table.n + 1)
    k = _monomial_ratios(alpha, table.n) * float(i) ** (l - alpha)
    return h ** (-alpha) * (k @ table.a)


def _power_sums(g: np.ndarray, top: int, n: int) -> np.ndarray:
    """``S[M, l] = sum_{k=0}^{M} g_k (M - k)^l`` for ``M = 0..top`` (``0^0 = 1``)."""
    m = np.arange(top + 1, dtype=float)
    S = np.empty((top + 1, n + 1))
    for l in range(n + 1):
        S[:, l] = np.convolve(g[: top + 1], m ** l)[: top + 1]
    return S


def corrected_grunwald_row(p: int, g: np.ndarray, table: TaylorCoeffTable, alpha: float,
                           i: int, N: int, h: float) -> np.ndarray:
    """Row over ``u_0..u_N`` of the shifted Grünwald operator applied to the Taylor remainder."""
    if not 1 <= i <= N - 1:
        raise ValueError("row index must lie in 1..N-1")
    if table.width > N + 1:
        raise ConfigurationError(f"correction order {table.n} needs N >= {2 * table.n}")
    top = i + p
    row = np.zeros(N + 1)
    k = np.arange(top + 1)
    row[top - k] = g[k]
    S = _power_sums(g, top, table.n)[top]
    row[: table.width] -= S @ table.a
    return h ** (-alpha) * row


def _extended_table(n: int) -> np.ndarray:
    a = np.zeros((n + 1, 2 * n + 1), dtype=np.longdouble)
    for l in range(n + 1):
        for j, poly in enumerate(_lagrange_coeffs(n + l)):
            c = poly[l]
            a[l, j] = np.longdouble(c.numerator) / np.longdouble(c.denominator)
    return a


def _extended_ratios(alpha: float, n: int) -> np.ndarray:
    with mpmath.workdps(30):
        return np.array([np.longdouble(mpmath.nstr(
            mpmath.factorial(l) * mpmath.rgamma(l + 1 - mpmath.mpf(alpha)), 25))
            for l in range(n + 1)], dtype=np.longdouble)


def corrected_operator(scheme: SchemeSpec, alpha: float, N: int, n: int) -> np.ndarray:
    """``(N-1) x (N+1)`` matrix approximating ``c_{-1} D u_{i-1} + c_0 D u_i + c_1 D u_{i+1}`` on [0, 1].

    The power sums and the exact monomial terms both grow like ``N^l`` while
    their scheme-weighted difference is far smaller, so the rows are summed
    in extended precision and rounded once at the end.
    """
    alpha = check_alpha(alpha)
    table = vandermonde_coeffs(n)
    if table.width > N + 1:
        raise ConfigurationError(f"correction order {n} needs N >= {2 * n}")
    ld = np.longdouble
    al, w = ld(alpha), table.width
    a = _extended_table(n)
    g = np.empty(N + 2, dtype=ld)
    g[0] = 1
    for k in range(1, N + 2):
        g[k] = (ld(k) - 1 - al) / ld(k) * g[k - 1]
    m = np.arange(N + 2, dtype=ld)
    S = np.stack([np.convolve(g, m ** l)[: N + 2] for l in range(n + 1)], axis=1) @ a
    ratios = _extended_ratios(alpha, n)
    powers = np.arange(n + 1, dtype=ld) - al
    R = np.zeros((N - 1, N + 1), dtype=ld)
    for r, i in enumerate(range(1, N)):
        for p, dp in zip((-1, 0, 1), scheme.d):
            if dp:
                top = i + p
                R[r, top::-1] += ld(dp) * g[: top + 1]
                R[r, :w] -= ld(dp) * S[top]
        for o, co in zip((-1, 0, 1), scheme.c):
            if co and i + o > 0:
                R[r, :w] += ld(co) * ((ratios * ld(i + o) ** powers) @ a)
    return (R * ld(N) ** al).astype(float)


DEFAULT_CORRECTION_ORDER = 3


def default_order(N: int) -> int:
    """Correction order 3, lowered when the grid is too coarse.

    Order 3 keeps the full rate of every catalogued scheme up to fourth order.
    Larger orders widen the one-sided stencil and can make the CN iteration
    unstable; order 2 does so already for some shifted schemes at small alpha.
    """
    return max(1, min(DEFAULT_CORRECTION_ORDER, N // 2))


@dataclass
class SteadyProblem:
    """``-D_left^alpha u + b u = f`` on ``(0, 1)`` with ``u(0) = phi_0``, ``u(1) = phi_1``."""

    alpha: float
    b: Callable
    f: Callable
    phi_0: float
    phi_1: float
    exact: Callable | None = None
    name: str = ""

    def __post_init__(self):
        check_alpha(self.alpha)
        xs = np.linspace(0.0, 1.0, 257)
        if np.any(np.asarray(self.b(xs)) < 0):
            raise ConfigurationError("b must be nonnegative on [0, 1]")


@dataclass
class SteadySystem:
    matrix: np.ndarray
    rhs: np.ndarray
    x: np.ndarray


def assemble_steady(problem: SteadyProblem, scheme: SchemeSpec, N: int,
                    n: int | None = None) -> SteadySystem:
    n = default_order(N) if n is None else n
    h = 1.0 / N
    x = h * np.arange(N + 1)
    R = corrected_operator(scheme, problem.alpha, N, n)
    b = np.asarray(problem.b(x), dtype=float) * np.ones(N + 1)
    C = compact_full(scheme.c, N)
    full = -R + C * b
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.asarray(problem.f(x), dtype=float) * np.ones(N + 1)
    f[0] = b[0] * problem.phi_0
    rhs = C @ f - full[:, 0] * problem.phi_0 - full[:, N] * problem.phi_1
    return SteadySystem(full[:, 1:N], rhs, x)


def steady_solve(problem: SteadyProblem, scheme: SchemeSpec, N: int,
                 n: int | None = None) -> np.ndarray:
    """Nodal solution ``u_0..u_N`` of the corrected quasi-compact scheme."""
    system = assemble_steady(problem, scheme, N, n)
    u = np.empty(N + 1)
    u[0], u[N] = problem.phi_0, problem.phi_1
    u[1:N] = lu_solve(lu_factor(system.matrix), system.rhs)
    return u


def nonhomogeneous_solve(problem: Problem1D, scheme: SchemeSpec, N: int, tau_rule="h",
                         n: int | None = None) -> SolveResult1D:
    """CN stepping with the corrected operator for ``u_t = K1 D_left^alpha u + f``."""
    if problem.K2 != 0:
        raise ConfigurationError("the boundary correction covers the left derivative only")
    if (problem.x_L, problem.x_R) != (0.0, 1.0):
        raise ConfigurationError("the boundary correction is set up on [0, 1]")
    n = default_order(N) if n is None else n
    h = 1.0 / N
    M, tau = resolve_tau(tau_rule, h, problem.T_final)
    x = h * np.arange(N + 1)
    R = problem.K1 * corrected_operator(scheme, problem.alpha, N, n)
    C = compact_full(scheme.c, N)
    left = C - 0.5 * tau * R
    right = C + 0.5 * tau * R
    lu = lu_factor(left[:, 1:N])
    U = initial_state(problem, x)
    for k in range(M):
        t_n, t_new = k * tau, (k + 1) * tau
        new_b = (float(problem.phi_L(t_new)), float(problem.phi_R(t_new)))
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.asarray(problem.source(x, t_n + 0.5 * tau), dtype=float)
        # stands in for u_t(0, t) so the node-0 time difference cancels
        f[0] = (new_b[0] - U[0]) / tau
        rhs = (right @ U + tau * (C @ f)
               - left[:, 0] * new_b[0] - left[:, N] * new_b[1])
        U = np.concatenate(([new_b[0]], lu_solve(lu, rhs), [new_b[1]]))
    return SolveResult1D(N, h, M, tau, x, U)
