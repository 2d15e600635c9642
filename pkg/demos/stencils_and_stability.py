"""Build a few stencils, check their order and see which CN iterations stay bounded.

Run with ``python demos/stencils_and_stability.py``.
"""

import numpy as np

from quasicompact.schemes import parse_label, verify_order
from quasicompact.stability import definiteness_check, sweep_unstable

alpha = 1.5
for label in ("1", "4", "(4,5)", "(1,2)+(1,8)"):
    s = parse_label(label, alpha)
    c = ", ".join(f"{v:.4f}" for v in s.c)
    d = ", ".join(f"{v:.4f}" for v in s.d)
    print(f"{label:>12}  order {verify_order(s, alpha)}  c=({c})  d=({d})")

# The generating function of the differential matrix should stay below zero.
f_max, negative = definiteness_check(parse_label("4", alpha), alpha)
print(f"\nscheme 4: max symbol {f_max:.2e}, negative definite: {negative}")

# Pairing two fourth-order ingredients does not guarantee a stable CN scheme.
h = 0.01
for label in ("(1,2)+(1,8)", "(1,2)+(1,4)"):
    unstable, verdicts = sweep_unstable(parse_label(label, alpha), alpha, 100, (h * h, h, 10 * h))
    rho = np.array([v.rho for v in verdicts])
    print(f"{label:>12}  rho over tau in (h^2, h, 10h): {np.array2string(rho, precision=6)}"
          f"  -> {'unstable' if unstable else 'stable'}")
