"""Data that do not vanish at x = 0: plain shifted sums versus the corrected operator.

The exact solution is ``exp(-t) (1 + x + x^(3+alpha))``. Without the Taylor
correction the left derivative of the constant and linear parts is missed
entirely; with it the scheme keeps its design order.

Run with ``python demos/nonzero_boundary.py``.
"""

import dataclasses

import numpy as np

from quasicompact.harness import builtin_problem, run_convergence
from quasicompact.schemes import parse_label
from quasicompact.solver1d import discrete_l2, solve

alpha, label = 1.5, "(1,3)"
problem = builtin_problem("4.add", alpha)
scheme = parse_label(label, alpha)
# The source is unbounded at x = 0; the plain solver only needs it to be finite.
finite = dataclasses.replace(
    problem, source=lambda x, t: np.nan_to_num(problem.source(x, t), posinf=0.0, neginf=0.0))

print("uncorrected solver")
for N in (16, 32, 64):
    res = solve(finite, scheme, N, "h/20")
    exact = problem.exact(res.x, problem.T_final)
    print(f"  N={N:3d}  error {discrete_l2(res.U[1:-1], exact[1:-1], 1 / N):.3e}")

print("corrected solver")
report = run_convergence("4.add", label, alpha, [16, 32, 64], "h/20")
for row in report.rows:
    rate = "" if row.rate is None else f"  rate {row.rate:.2f}"
    print(f"  N={row.N:3d}  error {row.error:.3e}{rate}")
