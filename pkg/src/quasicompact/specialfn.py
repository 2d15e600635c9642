"""Gamma function helpers and exact Riemann-Liouville derivatives of monomials.

The monomial formulas are what every manufactured solution in this package
is built from: for ``xi = x`` (left side, lower terminal 0) or ``xi = 1 - x``
(right side, upper terminal 1),

.. math::

    D^\\alpha \\xi^s = \\frac{\\Gamma(s + 1)}{\\Gamma(s + 1 - \\alpha)} \\xi^{s - \\alpha}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a function."""


class Side(enum.Enum):
    """Terminal of a Riemann-Liouville derivative on [0, 1]."""

    #: integrate from 0 (left derivative)
    LEFT = "left"
    #: integrate from 1 (right derivative)
    RIGHT = "right"


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Gamma function; raises :class:`DomainError` at the poles 0, -1, -2, ..."""
    x = float(x)
    if _is_pole(x):
        raise DomainError(f"gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x):
    """Reciprocal gamma, ``1/Gamma(x)``, defined as 0 at the poles.

    Works elementwise on arrays.
    """
    return special.rgamma(x)


def gamma_ratio(s: float, alpha: float) -> float:
    """``Gamma(s + 1) / Gamma(s + 1 - alpha)`` with the reciprocal-gamma convention."""
    return gamma(s + 1.0) * float(rgamma(s + 1.0 - alpha))


@dataclass(frozen=True)
class MonomialDerivSpec:
    """Fractional derivative of order ``alpha`` of ``xi**s`` on [0, 1]."""

    s: float
    alpha: float
    side: Side = Side.LEFT

    def __post_init__(self):
        if self.s < 0:
            raise DomainError(f"exponent must be nonnegative, got {self.s}")
        if not 1.0 < self.alpha <= 2.0:
            raise DomainError(f"order must lie in (1, 2], got {self.alpha}")

    @property
    def singular(self) -> bool:
        # a vanishing coefficient removes the singularity, e.g. s = 0, alpha = 2
        return self.s - self.alpha < 0 and self.coefficient != 0.0

    @property
    def coefficient(self) -> float:
        return gamma_ratio(self.s, self.alpha)


def rl_monomial_deriv(spec: MonomialDerivSpec, x):
    """Exact RL derivative of ``x**s`` (left) or ``(1 - x)**s`` (right) at ``x``.

    ``x`` may be a scalar or an array. Evaluating at the singular endpoint
    (``x = 0`` left, ``x = 1`` right, when ``s < alpha``) raises
    :class:`DomainError`.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any((x_arr < 0.0) | (x_arr > 1.0)):
        raise DomainError("evaluation point outside [0, 1]")
    xi = x_arr if spec.side is Side.LEFT else 1.0 - x_arr
    coef = spec.coefficient
    if coef == 0.0:
        out = np.zeros_like(xi)
    else:
        if spec.singular and np.any(xi == 0.0):
            raise DomainError("evaluation at the singular endpoint")
        out = coef * xi ** (spec.s - spec.alpha)
    return float(out) if out.ndim == 0 else out
