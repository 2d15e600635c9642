"""Quasi-compact Grünwald schemes for space-fractional diffusion equations."""

from .schemes import SchemeSpec, build_second_order, combine, parse_label, verify_order
from .solver1d import Problem1D, solve
from .solver2d import Problem2D, adi_solve
from .boundary import SteadyProblem, nonhomogeneous_solve, steady_solve
from .harness import builtin_problem, run_convergence

__all__ = [
    "SchemeSpec", "build_second_order", "combine", "parse_label", "verify_order",
    "Problem1D", "solve", "Problem2D", "adi_solve",
    "SteadyProblem", "nonhomogeneous_solve", "steady_solve",
    "builtin_problem", "run_convergence",
]
__version__ = "0.1.0"
