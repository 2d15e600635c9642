"""Grünwald-Letnikov weights and shifted Grünwald difference operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specialfn import DomainError, Side


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"fractional order must lie in (1, 2], got {alpha}")
    return alpha


@dataclass(frozen=True)
class GrunwaldCoeffs:
    """Coefficients ``g_k = (-1)^k binom(alpha, k)`` of ``(1 - z)**alpha``."""

    alpha: float
    g: np.ndarray

    def __len__(self):
        return len(self.g)


@dataclass(frozen=True)
class CombinedWeights:
    """Weights ``w_k`` of the d-weighted shifted Grünwald sum.

    ``w`` is the first column/row data of the Toeplitz differentiation matrix.
    """

    alpha: float
    d: tuple
    w: np.ndarray

    def __len__(self):
        return len(self.w)


def grunwald_coeffs(alpha: float, K: int) -> GrunwaldCoeffs:
    """Return ``g_0, ..., g_K`` by the recursion ``g_k = (k - 1 - alpha) / k * g_{k-1}``."""
    alpha = check_alpha(alpha)
    if K < 0:
        raise ValueError("K must be nonnegative")
    g = np.empty(K + 1)
    g[0] = 1.0
    for k in range(1, K + 1):
        g[k] = (k - 1.0 - alpha) / k * g[k - 1]
    return GrunwaldCoeffs(alpha, g)


def combined_weights(d, g: GrunwaldCoeffs, K: int | None = None) -> CombinedWeights:
    """Merge the three shifted sums ``d_{-1} δ_{-1} + d_0 δ_0 + d_1 δ_1`` into one.

    ``w_0 = d_1 g_0``, ``w_1 = d_0 g_0 + d_1 g_1`` and
    ``w_k = d_{-1} g_{k-2} + d_0 g_{k-1} + d_1 g_k`` for ``k >= 2``.
    """
    dm, d0, d1 = (float(v) for v in d)
    if K is None:
        K = len(g) - 1
    if K > len(g) - 1:
        raise ValueError(f"need {K + 1} Grünwald coefficients, got {len(g)}")
    gg = g.g[: K + 1]
    w = d1 * gg.copy()
    w[1:] += d0 * gg[:-1]
    w[2:] += dm * gg[:-2]
    return CombinedWeights(g.alpha, (dm, d0, d1), w)


def weights_for(d, alpha: float, K: int) -> CombinedWeights:
    return combined_weights(d, grunwald_coeffs(alpha, K), K)


def shifted_apply(samples, h: float, alpha: float, p: int, side: Side = Side.LEFT,
                  g: GrunwaldCoeffs | None = None) -> np.ndarray:
    """Apply the shifted Grünwald operator to grid samples on ``x_0..x_N``.

    Left (``delta``) at node ``i``: ``h^-alpha sum_{k=0}^{i+p} g_k f_{i-k+p}``;
    right (``sigma``) mirrors it. Samples outside ``0..N`` count as zero.
    """
    f = np.asarray(samples, dtype=float)
    if abs(p) > 1:
        raise ValueError("shift must satisfy |p| <= 1")
    n = len(f)
    if g is None:
        g = grunwald_coeffs(alpha, n + 1)
    gk = g.g
    if side is Side.RIGHT:
        return shifted_apply(f[::-1], h, alpha, p, Side.LEFT, g)[::-1]
    out = np.zeros(n)
    for i in range(n):
        # indices m = i - k + p for k = 0..i+p, restricted to m <= n-1
        k_lo = max(0, i + p - (n - 1))
        ks = np.arange(k_lo, i + p + 1)
        if len(ks):
            out[i] = gk[ks] @ f[i - ks + p]
    return out * h ** (-alpha)
