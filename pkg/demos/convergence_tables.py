"""Regenerate a handful of convergence rows and compare with the reference rates.

Run with ``python demos/convergence_tables.py``; it takes about half a minute.
"""

from quasicompact.harness import run_convergence

runs = [
    ("4.1", "1", 1.5, [8, 16, 32, 64, 128], "h", None, 1.99),
    ("4.1", "(1,2)+(1,8)", 1.9, [8, 16, 32, 64], "h^2", None, 3.98),
    ("4.2", "(4,5)", 1.5, [8, 16, 32, 64, 128], "h/20", None, 2.88),
    ("4.3", "5", 1.1, [8, 16, 32, 64], "h", 1.9, 2.01),
    ("A.29", "(1,2)+(1,8)", 1.9, [8, 16, 32, 64], "h", None, 4.88),
]

print(f"{'example':>8} {'scheme':>12} {'alpha':>5}  errors by N, then final rate (reference)")
for example, label, alpha, grids, rule, beta, reference in runs:
    report = run_convergence(example, label, alpha, grids, rule, beta2=beta)
    errors = " ".join(f"{row.error:.2e}" for row in report.rows)
    print(f"{example:>8} {label:>12} {alpha:>5}  {errors}  {report.rates[-1]:.2f} ({reference})")
