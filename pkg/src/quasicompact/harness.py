"""Manufactured test problems and grid-refinement convergence studies.

Every built-in problem has an exact solution ``e^{-t} P(x)`` (or
``e^{-t} P(x) P(y)`` in 2D); the sources are derived from it with exact
monomial derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import SteadyProblem, nonhomogeneous_solve, steady_solve
from .manufactured import Profile, SeparableSolution
from .schemes import parse_label
from .solver1d import ConfigurationError, Problem1D, discrete_l2, final_error, solve
from .solver2d import Problem2D, adi_solve, final_error_2d

BUILTIN_IDS = ("4.1", "4.2", "4.add", "4.3", "A.29")
CORRECTED = ("4.add", "A.29")
NORM_NAME = "discrete L2"


def problem_from_solution(sol: SeparableSolution, alpha: float, K1: float, K2: float,
                          name: str = "") -> Problem1D:
    return Problem1D(
        alpha=alpha, K1=K1, K2=K2,
        source=sol.source(alpha, K1, K2),
        u0=lambda x: sol(x, 0.0),
        phi_L=sol.boundary(0.0), phi_R=sol.boundary(1.0),
        exact=sol, name=name,
    )


def _two_sided_2d(alpha: float, beta2: float) -> Problem2D:
    P = Profile.from_product(3, 3)

    def D(order, s):
        return P.left_deriv(order, s) + P.right_deriv(order, s)

    def exact(X, Y, t):
        return math.exp(-t) * P(X) * P(Y)

    def source(X, Y, t):
        return -math.exp(-t) * (P(X) * P(Y) + D(alpha, X) * P(Y) + P(X) * D(beta2, Y))

    return Problem2D(alpha, beta2, source, lambda X, Y: exact(X, Y, 0.0), exact, name="4.3")


def _steady(alpha: float) -> SteadyProblem:
    P = Profile(((-1.0, 0.0), (-1.0, 1.0), (-1.0, 3.0 + alpha)))

    def f(x):
        return -P.left_deriv(alpha, x) + P(x)

    return SteadyProblem(alpha, lambda x: np.ones_like(np.asarray(x, dtype=float)), f,
                         -1.0, -3.0, exact=P, name="A.29")


def builtin_problem(example: str, alpha: float = 1.5, beta2: float | None = None):
    """Problem object for one of :data:`BUILTIN_IDS` at the given order(s)."""
    if example == "4.1":
        sol = SeparableSolution(Profile(((1.0, 3.0 + alpha),)))
        return problem_from_solution(sol, alpha, 1.0, 0.0, "4.1")
    if example == "4.2":
        sol = SeparableSolution(Profile.from_product(3, 3))
        return problem_from_solution(sol, alpha, 1.0, 1.0, "4.2")
    if example == "4.add":
        sol = SeparableSolution(Profile(((1.0, 0.0), (1.0, 1.0), (1.0, 3.0 + alpha))))
        return problem_from_solution(sol, alpha, 1.0, 0.0, "4.add")
    if example == "4.3":
        return _two_sided_2d(alpha, alpha if beta2 is None else beta2)
    if example == "A.29":
        return _steady(alpha)
    raise ConfigurationError(f"unknown example {example!r}; choose from {', '.join(BUILTIN_IDS)}")


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    error: float
    rate: float | None = None


@dataclass
class ConvergenceReport:
    example: str
    label: str
    alpha: float
    tau_rule: str
    beta2: float | None = None
    correction: int | None = None
    rows: list = field(default_factory=list)
    norm: str = NORM_NAME

    @property
    def rates(self) -> list:
        return [r.rate for r in self.rows[1:]]

    def metadata(self) -> list:
        meta = [("example", self.example), ("scheme", self.label), ("alpha", f"{self.alpha:g}")]
        if self.beta2 is not None:
            meta.append(("beta", f"{self.beta2:g}"))
        meta.append(("tau_rule", self.tau_rule))
        if self.example in CORRECTED or self.correction is not None:
            meta.append(("correction_order", "auto" if self.correction is None else str(self.correction)))
        meta.append(("norm", self.norm))
        return meta

    def to_csv(self) -> str:
        lines = [f"# {k}: {v}" for k, v in self.metadata()]
        lines.append("N,error,rate")
        for r in self.rows:
            rate = "" if r.rate is None else f"{r.rate:.5e}"
            lines.append(f"{r.N},{r.error:.5e},{rate}")
        return "\n".join(lines) + "\n"


def rates_from_errors(errors) -> list:
    """``log2(e_{k-1} / e_k)``; ``None`` for the first row."""
    out = [None]
    for prev, cur in zip(errors[:-1], errors[1:]):
        out.append(math.log2(prev / cur) if prev > 0 and cur > 0 else math.nan)
    return out


def check_grids(grids) -> list:
    grids = [int(N) for N in grids]
    if not grids:
        raise ConfigurationError("need at least one grid")
    if grids[0] < 2:
        raise ConfigurationError("grids must start at N >= 2")
    for a, b in zip(grids[:-1], grids[1:]):
        if b != 2 * a:
            raise ConfigurationError(f"grids must double: {a} -> {b}")
    return grids


def solve_example(example: str, label: str, alpha: float, N: int, tau_rule="h",
                  beta2: float | None = None, correction: int | None = None):
    """Run one grid; returns ``(x, U, error)`` with ``U`` the nodal solution."""
    problem = builtin_problem(example, alpha, beta2)
    if example == "4.3":
        res = adi_solve(problem, label, N, tau_rule)
        return res.x, res.U, final_error_2d(problem, res)
    scheme = parse_label(label, alpha)
    if example == "A.29":
        u = steady_solve(problem, scheme, N, correction)
        x = np.arange(N + 1) / N
        return x, u, discrete_l2(u[1:-1], problem.exact(x[1:-1]), 1.0 / N)
    return solve_problem1d(problem, scheme, N, tau_rule, example == "4.add", correction)


def solve_problem1d(problem: Problem1D, scheme, N: int, tau_rule="h", corrected: bool = False,
                    correction: int | None = None):
    """Run one grid of a time-dependent 1D problem; returns ``(x, U, error)``."""
    if corrected:
        res = nonhomogeneous_solve(problem, scheme, N, tau_rule, correction)
    else:
        res = solve(problem, scheme, N, tau_rule)
    err = final_error(problem, res) if problem.exact is not None else math.nan
    return res.x, res.U, err


def problem_from_dict(data: dict) -> tuple:
    """Build ``(Problem1D, corrected)`` from a JSON-style description.

    Keys: ``alpha``; ``K1`` (default 1) and ``K2`` (default 0); ``T_final``
    (default 1); ``solution`` with ``time_rate`` (default -1) and ``terms``, a
    list of ``[coef, power]`` pairs for ``u = exp(time_rate t) sum coef x^power``;
    ``boundary_correction`` (default false) selects the corrected left-sided
    solver for data that do not vanish at x = 0. Unknown keys are rejected.
    """
    allowed = {"alpha", "K1", "K2", "T_final", "solution", "boundary_correction", "name"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigurationError(f"unknown problem keys: {sorted(unknown)}")
    try:
        alpha = float(data["alpha"])
        sol_data = data["solution"]
        terms = tuple((float(c), float(s)) for c, s in sol_data["terms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed problem description: {exc}") from None
    if not terms:
        raise ConfigurationError("solution needs at least one term")
    sol = SeparableSolution(Profile(terms), float(sol_data.get("time_rate", -1.0)))
    K1, K2 = float(data.get("K1", 1.0)), float(data.get("K2", 0.0))
    problem = problem_from_solution(sol, alpha, K1, K2, str(data.get("name", "custom")))
    problem.T_final = float(data.get("T_final", 1.0))
    if problem.T_final <= 0:
        raise ConfigurationError("T_final must be positive")
    if K2 and not sol.profile.integer_powers():
        raise ConfigurationError("a right derivative needs integer powers")
    corrected = bool(data.get("boundary_correction", False))
    ends = problem.source(np.array([0.0, 1.0]), 0.0)
    if not np.isfinite(ends[1]) or not (corrected or np.isfinite(ends[0])):
        raise ConfigurationError("source is unbounded at an endpoint; "
                                 "set boundary_correction for data that do not vanish at x = 0")
    return problem, corrected


def run_convergence_problem(problem: Problem1D, label: str, grids, tau_rule="h",
                            corrected: bool = False, correction: int | None = None) -> ConvergenceReport:
    """Convergence study for a user-supplied 1D problem with a known exact solution."""
    grids = check_grids(grids)
    if problem.exact is None:
        raise ConfigurationError("a convergence study needs an exact solution")
    scheme = parse_label(label, problem.alpha)
    errors = [solve_problem1d(problem, scheme, N, tau_rule, corrected, correction)[2] for N in grids]
    rows = [ConvergenceRow(N, e, r) for N, e, r in zip(grids, errors, rates_from_errors(errors))]
    return ConvergenceReport(problem.name or "custom", label, problem.alpha, str(tau_rule),
                             correction=correction if corrected else None, rows=rows)


def run_convergence(example: str, label: str, alpha: float, grids, tau_rule="h",
                    beta2: float | None = None, correction: int | None = None) -> ConvergenceReport:
    grids = check_grids(grids)
    if example not in BUILTIN_IDS:
        raise ConfigurationError(f"unknown example {example!r}")
    if example == "4.3" and beta2 is None:
        beta2 = alpha
    errors = [solve_example(example, label, alpha, N, tau_rule, beta2, correction)[2]
              for N in grids]
    rows = [ConvergenceRow(N, e, r) for N, e, r in zip(grids, errors, rates_from_errors(errors))]
    return ConvergenceReport(
        example, label, alpha, "steady" if example == "A.29" else str(tau_rule),
        beta2 if example == "4.3" else None,
        correction if example in CORRECTED else None, rows)
