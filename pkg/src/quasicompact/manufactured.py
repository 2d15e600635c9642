"""Manufactured solutions built from monomials.

A :class:`Profile` is a finite sum ``sum_k coef_k * x**s_k`` on ``[0, 1]``.
Its left RL derivative follows termwise from the monomial formula; the right
derivative is available when every power is a nonnegative integer, by
re-expanding ``x**s = (1 - (1 - x))**s`` in powers of ``1 - x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import DomainError, MonomialDerivSpec, Side


@dataclass(frozen=True)
class Profile:
    """Spatial profile ``sum coef * x**power``; ``terms`` holds ``(coef, power)`` pairs."""

    terms: tuple

    def __post_init__(self):
        for coef, s in self.terms:
            if s < 0:
                raise DomainError(f"negative power {s} in profile")
        object.__setattr__(self, "terms", tuple((float(c), float(s)) for c, s in self.terms))

    @classmethod
    def from_product(cls, a: int, b: int) -> "Profile":
        """Profile of ``x**a (1 - x)**b`` for nonnegative integers ``a, b``."""
        return cls(tuple((float(math.comb(b, k) * (-1) ** k), float(a + k)) for k in range(b + 1)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for coef, s in self.terms:
            out = out + coef * x ** s
        return out

    def integer_powers(self) -> bool:
        return all(float(s).is_integer() for _, s in self.terms)

    def left_deriv(self, alpha: float, x):
        """``_0D_x^alpha`` of the profile; ``inf`` where a singular term meets ``x = 0``."""
        return _deriv_sum(((c, s) for c, s in self.terms), alpha, np.asarray(x, dtype=float), Side.LEFT)

    def right_deriv(self, alpha: float, x):
        """``_xD_1^alpha`` of the profile (integer powers only)."""
        if not self.integer_powers():
            raise DomainError("right derivative needs integer powers")
        reflected: dict = {}
        for coef, s in self.terms:
            n = int(s)
            for k in range(n + 1):
                reflected[k] = reflected.get(k, 0.0) + coef * math.comb(n, k) * (-1) ** k
        terms = ((c, float(k)) for k, c in reflected.items() if c != 0.0)
        return _deriv_sum(terms, alpha, np.asarray(x, dtype=float), Side.RIGHT)


def _deriv_sum(terms, alpha: float, x: np.ndarray, side: Side):
    xi = x if side is Side.LEFT else 1.0 - x
    out = np.zeros_like(xi)
    with np.errstate(divide="ignore", invalid="ignore"):
        for coef, s in terms:
            k = MonomialDerivSpec(s, alpha, side).coefficient
            if k != 0.0:
                out = out + coef * k * xi ** (s - alpha)
    return out


@dataclass(frozen=True)
class SeparableSolution:
    """``u(x, t) = exp(rate * t) * P(x)``."""

    profile: Profile
    rate: float = -1.0

    def __call__(self, x, t):
        return math.exp(self.rate * t) * self.profile(x)

    def boundary(self, x0: float):
        value = float(self.profile(np.array([x0]))[0])
        rate = self.rate
        return lambda t: math.exp(rate * t) * value

    def source(self, alpha: float, K1: float, K2: float):
        """``f = u_t - K1 D_left u - K2 D_right u`` as a function of ``(x, t)``."""
        P, rate = self.profile, self.rate

        def f(x, t):
            x = np.asarray(x, dtype=float)
            val = rate * P(x)
            if K1:
                val = val - K1 * P.left_deriv(alpha, x)
            if K2:
                val = val - K2 * P.right_deriv(alpha, x)
            return math.exp(rate * t) * val

        return f
